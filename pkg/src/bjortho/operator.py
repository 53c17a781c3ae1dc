"""Birkhoff-James orthogonality of matrices under the spectral norm.

For the spectral norm the set ``M_T`` of unit vectors where ``||Tx|| = ||T||``
is the unit sphere of ``H0``, the span of the top right singular vectors. In
finite dimension ``T _|_B A`` holds iff ``<Tx, Ax> = 0`` for some ``x`` in
``M_T``; since ``x -> <Tx, Ax>`` is the quadratic form of ``sym(T^T A)``, this is
decided by the signs of the extreme eigenvalues of that form compressed to
``H0`` (``spectral-test``). The ``oracle`` route minimises ``||T + lam*A||``
over ``lam`` directly and works for the induced 1- and inf-norms too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConvergenceError, InputError, ZeroOperatorError
from .linalg import (
    as_matrix,
    minimize_scalar_convex,
    operator_norm,
    parse_norm_selector,
    singular_values,
    spectral_norm,
    sym_eigen,
)
from .verdict import ORACLE, SPECTRAL, BjVerdict

DEFAULT_TOL = 1e-9
ORACLE_LAMBDA_TOL = 1e-11


@dataclass(frozen=True)
class NormAttainingSet:
    """``M_T`` as the unit sphere of ``span(basis)``.

    ``sigma_out`` is the norm of ``T`` restricted to the orthogonal complement
    of the span (the next singular value, 0 if there is none).
    """

    basis: np.ndarray
    sigma1: float
    sigma_out: float
    multiplicity: int
    tol_used: float
    singular_values: np.ndarray

    def to_dict(self) -> dict:
        return {
            "sigma1": self.sigma1,
            "sigma_out": self.sigma_out,
            "multiplicity": self.multiplicity,
            "tol": self.tol_used,
            "basis": [[float(v) for v in row] for row in self.basis],
            "singular_values": [float(s) for s in self.singular_values],
        }


@dataclass(frozen=True)
class DescentCertificate:
    lambda0: float
    operator_norm_after: float
    max_over_MT: float
    sigma1: float

    def to_dict(self) -> dict:
        return {
            "lambda0": self.lambda0,
            "operator_norm_after": self.operator_norm_after,
            "max_over_MT": self.max_over_MT,
            "sigma1": self.sigma1,
        }


def _pair(T, A) -> tuple[np.ndarray, np.ndarray]:
    T = as_matrix(T, "T")
    A = as_matrix(A, "A")
    if T.shape != A.shape:
        raise InputError(f"shape mismatch: T is {T.shape}, A is {A.shape}")
    return T, A


def orthonormalize(Q: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt, run twice for stability."""
    Q = np.array(Q, dtype=np.float64)
    for _ in range(2):
        for j in range(Q.shape[1]):
            for i in range(j):
                Q[:, j] -= np.dot(Q[:, i], Q[:, j]) * Q[:, i]
            Q[:, j] /= np.linalg.norm(Q[:, j])
    return Q


def norm_attaining_set(T, tol: float = DEFAULT_TOL) -> NormAttainingSet:
    T = as_matrix(T, "T")
    sig, V = singular_values(T)
    if sig[0] == 0.0:
        raise ZeroOperatorError("T is the zero operator; M_T is the whole unit sphere")
    k = int(np.sum(sig >= sig[0] * (1.0 - tol)))
    basis = orthonormalize(V[:, :k])
    sigma_out = float(sig[k]) if k < sig.size else 0.0
    return NormAttainingSet(basis, float(sig[0]), sigma_out, k, tol, sig)


def _witness_direction(lmax, lmin, vmax, vmin, slack) -> np.ndarray:
    if abs(lmax) <= slack:
        return vmax
    if abs(lmin) <= slack:
        return vmin
    # lmax > 0 > lmin: rotate so lmax cos^2 + lmin sin^2 = 0
    theta = math.atan(math.sqrt(lmax / -lmin))
    v = math.cos(theta) * vmax + math.sin(theta) * vmin
    return v / np.linalg.norm(v)


def bj_operator_spectral(T, A, tol: float = DEFAULT_TOL, minimize: bool = True) -> BjVerdict:
    """Spectral-norm orthogonality ``T _|_B A`` via the compressed quadratic form.

    Orthogonal iff ``lmin(S) <= tol*s`` and ``lmax(S) >= -tol*s`` where
    ``S = Q^T sym(T^T A) Q``, ``Q`` spans ``H0`` and ``s = ||T|| ||A||``. An
    orthogonal verdict carries a unit witness ``w`` in ``M_T`` with
    ``<Tw, Aw> ~ 0``. A non-orthogonal verdict reports the minimiser of
    ``||T + lam*A||`` (skipped when ``minimize`` is false, leaving NaN).
    """
    T, A = _pair(T, A)
    mt = norm_attaining_set(T, tol)
    norm_a = spectral_norm(A)
    Q = mt.basis
    M = T.T @ A
    S = Q.T @ (0.5 * (M + M.T)) @ Q
    eig = sym_eigen(0.5 * (S + S.T))
    lmax, lmin = float(eig.values[0]), float(eig.values[-1])
    slack = tol * mt.sigma1 * norm_a
    orthogonal = lmin <= slack and lmax >= -slack
    details = {"form_max": lmax, "form_min": lmin, "multiplicity": mt.multiplicity}
    if orthogonal:
        v = _witness_direction(lmax, lmin, eig.vectors[:, 0], eig.vectors[:, -1], slack)
        w = Q @ v
        w /= np.linalg.norm(w)
        return BjVerdict(True, 0.0, mt.sigma1, SPECTRAL, witness=w,
                         base_norm=mt.sigma1, details=details)
    lam, val = math.nan, math.nan
    if minimize:
        lam, val = _minimize_pencil(T, A, 2, mt.sigma1)
    return BjVerdict(False, lam, val, SPECTRAL, base_norm=mt.sigma1, details=details)


def _minimize_pencil(T, A, p, norm_t) -> tuple[float, float]:
    norm_a = operator_norm(A, p)
    if norm_a == 0.0:
        return 0.0, norm_t
    # minimise over mu with lam = mu * scale, so the bracket cap is scale-free
    scale = norm_t / norm_a if norm_t > 0.0 else 1.0 / norm_a
    step = A * scale
    mu, val = minimize_scalar_convex(lambda m: operator_norm(T + m * step, p),
                                     width=1.0, tol=ORACLE_LAMBDA_TOL)
    return mu * scale, val


def bj_operator_oracle(T, A, p=2, tol: float = DEFAULT_TOL) -> BjVerdict:
    """Orthogonality from the definition: is ``min_lam ||T + lam*A||_p >= ||T||_p (1 - tol)``?"""
    T, A = _pair(T, A)
    p = parse_norm_selector(p)
    norm_t = operator_norm(T, p)
    lam, val = _minimize_pencil(T, A, p, norm_t)
    return BjVerdict(val >= norm_t * (1.0 - tol), lam, val, ORACLE, base_norm=norm_t,
                     details={"p": "inf" if p == math.inf else p})


def sample_unit_sphere(basis: np.ndarray, count: int, rng: np.random.Generator) -> np.ndarray:
    """Columns: the basis vectors, their negatives, then random unit vectors of the span."""
    k = basis.shape[1]
    coeffs = rng.standard_normal((k, max(count - 2 * k, 0)))
    coeffs /= np.linalg.norm(coeffs, axis=0)
    return np.hstack([basis, -basis, basis @ coeffs])


def descent_lambda(T, A, tol: float = DEFAULT_TOL, seed: int = 0,
                   samples: int = 128) -> Optional[DescentCertificate]:
    """Non-zero ``lam0`` with ``||T + lam0*A|| < ||T||``, or None when ``T _|_B A``.

    ``max_over_MT`` is the largest ``||(T + lam0*A) x||`` over ``samples`` unit
    vectors of ``H0``. In finite dimension the decrease holds for the whole
    operator norm, not only pointwise on ``M_T``.
    """
    T, A = _pair(T, A)
    verdict = bj_operator_spectral(T, A, tol, minimize=False)
    if verdict.orthogonal:
        return None
    mt = norm_attaining_set(T, tol)
    oracle = bj_operator_oracle(T, A, 2, tol)
    lam0 = oracle.lambda_min
    moved = T + lam0 * A
    after = spectral_norm(moved)
    X = sample_unit_sphere(mt.basis, samples, np.random.default_rng(seed))
    over_mt = float(np.max(np.linalg.norm(moved @ X, axis=0)))
    if lam0 == 0.0 or not (after < mt.sigma1 and over_mt < mt.sigma1):
        raise ConvergenceError(
            f"no strict descent found (lambda={lam0!r}, norm after={after!r}, sigma1={mt.sigma1!r})"
        )
    return DescentCertificate(lam0, after, over_mt, mt.sigma1)


def adjoint_invariance(T, A, tol: float = DEFAULT_TOL) -> tuple[bool, bool]:
    T, A = _pair(T, A)
    original = bj_operator_spectral(T, A, tol, minimize=False).orthogonal
    transposed = bj_operator_spectral(T.T, A.T, tol, minimize=False).orthogonal
    return original, transposed


def orthogonalize_against(T: np.ndarray, A0: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Rank-one correction of ``A0`` so that ``<Tw, Aw> = 0`` (``w`` a unit vector)."""
    tw = T @ w
    return A0 - np.outer(tw, w) * (np.dot(tw, A0 @ w) / np.dot(tw, tw))
