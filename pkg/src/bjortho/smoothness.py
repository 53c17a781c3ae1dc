"""Smooth points of operator spaces.

A Hilbert-space operator is a smooth point of ``B(H)`` exactly when it attains
its norm only at ``+-x0`` and stays strictly below its norm on the hyperplane
orthogonal to ``x0``. For matrices both conditions collapse to a simple top
singular value. When ``sigma1`` is repeated, splitting ``T`` along two top
singular directions gives ``A1 + A2 = T`` with ``T`` orthogonal to each part but
not to their sum, which is the failure of right-additivity that non-smoothness
means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InputError, ZeroOperatorError
from .linalg import as_matrix, as_vector, operator_norm, singular_values
from .operator import (
    DEFAULT_TOL,
    bj_operator_oracle,
    bj_operator_spectral,
    norm_attaining_set,
    orthogonalize_against,
    sample_unit_sphere,
)
from .vector import check_p, pnorm, support_functionals, vector_smooth


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    sigma1: float
    sigma2: float
    x0: Optional[np.ndarray] = None
    hyperplane_sup: float = math.nan
    witness_pair: Optional[tuple[np.ndarray, np.ndarray]] = None

    @property
    def gap(self) -> float:
        return self.sigma1 - self.sigma2

    def to_dict(self) -> dict:
        out = {
            "smooth": self.smooth,
            "sigma1": self.sigma1,
            "sigma2": self.sigma2,
            "gap": self.gap,
            "x0": None if self.x0 is None else [float(v) for v in self.x0],
            "hyperplane_sup": None if math.isnan(self.hyperplane_sup) else self.hyperplane_sup,
            "witness_pair": None,
        }
        if self.witness_pair is not None:
            out["witness_pair"] = [m.tolist() for m in self.witness_pair]
        return out


def hyperplane_sup(T, x0, tol: float = DEFAULT_TOL) -> float:
    """``sup ||Ty||`` over unit ``y`` orthogonal to the unit vector ``x0``."""
    T = as_matrix(T, "T")
    x0 = as_vector(x0, "x0")
    if x0.size != T.shape[1]:
        raise InputError(f"x0 has {x0.size} entries but T has {T.shape[1]} columns")
    if abs(np.linalg.norm(x0) - 1.0) > tol:
        raise InputError(f"x0 must be a unit vector, ||x0|| = {np.linalg.norm(x0)!r}")
    projector = np.eye(x0.size) - np.outer(x0, x0)
    return operator_norm(T @ projector, 2)


def _split(T: np.ndarray, A1: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # A1 <- T - (T - A1) makes A1 + A2 == T in floating point wherever that is
    # representable at all. It is not when |A1_ij| >> |T_ij| and T_ij uses its
    # low mantissa bits: two large addends cannot cancel down to those bits.
    A2 = T - A1
    return T - A2, A2


def split_is_exact(T, pair) -> bool:
    return bool(np.array_equal(pair[0] + pair[1], T))


def nonsmooth_witness(T, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Split ``T = A1 + A2`` with ``T _|_B A1`` and ``T _|_B A2``.

    ``A1 = (T x1) x1^T`` for the first two orthonormal top singular vectors
    ``x1, x2``; ``x2`` witnesses ``T _|_B A1`` and ``x1`` witnesses ``T _|_B A2``.
    ``A1 + A2`` equals ``T`` (to which ``T`` is never orthogonal) bit for bit
    whenever binary64 can represent such a split; see :func:`split_is_exact`.
    """
    T = as_matrix(T, "T")
    mt = norm_attaining_set(T, tol)
    if mt.multiplicity < 2:
        raise InputError("sigma1 is simple: T is smooth and has no non-smooth witness")
    x1 = mt.basis[:, 0]
    return _split(T, np.outer(T @ x1, x1))


def operator_smooth(T, tol: float = DEFAULT_TOL) -> SmoothnessReport:
    T = as_matrix(T, "T")
    sig, V = singular_values(T)
    if sig[0] == 0.0:
        raise ZeroOperatorError("T is the zero operator")
    s1 = float(sig[0])
    s2 = float(sig[1]) if sig.size > 1 else 0.0
    if s1 - s2 > tol * s1:
        x0 = V[:, 0].copy()
        return SmoothnessReport(True, s1, s2, x0=x0, hyperplane_sup=hyperplane_sup(T, x0, 1e-8))
    return SmoothnessReport(False, s1, s2, witness_pair=nonsmooth_witness(T, tol))


def additivity_probe(T, pairs: int = 100, seed: int = 0, tol: float = DEFAULT_TOL):
    """Look for ``A1, A2`` with ``T _|_B A1``, ``T _|_B A2`` but not ``T _|_B (A1 + A2)``.

    Random pairs are first made orthogonal to ``T`` by a rank-one correction at
    random points of ``M_T``; if ``sigma1`` is repeated the constructive split
    from :func:`nonsmooth_witness` is tried as well. Every reported pair has
    been confirmed by the convex-minimisation oracle. Returns None otherwise.
    """
    T = as_matrix(T, "T")
    mt = norm_attaining_set(T, tol)
    rng = np.random.default_rng(seed)
    candidates = []
    if mt.multiplicity >= 2:
        candidates.append(nonsmooth_witness(T, tol))
    for _ in range(pairs):
        w = sample_unit_sphere(mt.basis, 2 * mt.multiplicity + 2, rng)[:, -2:]
        A1 = orthogonalize_against(T, rng.uniform(-1, 1, T.shape), w[:, 0])
        A2 = orthogonalize_against(T, rng.uniform(-1, 1, T.shape), w[:, 1])
        candidates.append((A1, A2))
    for A1, A2 in candidates:
        if not (bj_operator_spectral(T, A1, tol, minimize=False).orthogonal
                and bj_operator_spectral(T, A2, tol, minimize=False).orthogonal):
            continue
        if bj_operator_spectral(T, A1 + A2, tol, minimize=False).orthogonal:
            continue
        if (bj_operator_oracle(T, A1, 2, tol).orthogonal
                and bj_operator_oracle(T, A2, 2, tol).orthogonal
                and not bj_operator_oracle(T, A1 + A2, 2, tol).orthogonal):
            return A1, A2
    return None


# -- l2 -> l_p operators ------------------------------------------------------


@dataclass(frozen=True)
class CompactSmoothReport:
    """Sufficient conditions for smoothness of ``T: l_2^n -> l_p^m``.

    ``unique_norming``: ``T`` attains its norm only at ``+-x0``.
    ``image_smooth``: ``T x0`` is a smooth point of ``l_p^m``.
    """

    smooth: bool
    unique_norming: bool
    image_smooth: bool
    norm_value: float
    x0: np.ndarray
    image: np.ndarray
    norming_vectors: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "smooth": self.smooth,
            "unique_norming": self.unique_norming,
            "image_smooth": self.image_smooth,
            "norm": self.norm_value,
            "x0": [float(v) for v in self.x0],
            "image": [float(v) for v in self.image],
            "norming_vectors": [[float(v) for v in x] for x in self.norming_vectors],
        }


def _ascent(T, x, p, max_iter=2000):
    value = pnorm(T @ x, p)
    for _ in range(max_iter):
        f = support_functionals(T @ x, p, 1e-12)[0].coefficients
        g = T.T @ f
        ng = np.linalg.norm(g)
        if ng == 0.0:
            break
        x_new = g / ng
        new_value = pnorm(T @ x_new, p)
        done = new_value <= value * (1.0 + 1e-15) and np.linalg.norm(x_new - x) < 1e-12
        x, value = x_new, max(new_value, value)
        if done:
            break
    return x, pnorm(T @ x, p)


def norming_vectors(T, p, starts: int = 64, seed: int = 0, value_tol: float = 1e-8,
                    angle_tol: float = 1e-6) -> tuple[float, list[np.ndarray]]:
    """Multi-start ascent for the maximisers of ``||Tx||_p`` on the Euclidean sphere.

    Each start runs the fixed-point iteration ``x <- T^T f(Tx) / ||.||`` where
    ``f`` is a norming functional of ``Tx``; the value never decreases. Returns
    the best value and the distinct (up to sign) maximisers found, best first.
    Heuristic: a maximiser no start reaches is missed.
    """
    T = as_matrix(T, "T")
    p = check_p(p)
    rng = np.random.default_rng(seed)
    found = []
    for _ in range(starts):
        x0 = rng.standard_normal(T.shape[1])
        found.append(_ascent(T, x0 / np.linalg.norm(x0), p))
    # deterministic merge: best value first, ties keep start order
    order = sorted(range(len(found)), key=lambda i: (-found[i][1], i))
    best = found[order[0]][1]
    reps: list[np.ndarray] = []
    for i in order:
        x, val = found[i]
        if val < best * (1.0 - value_tol):
            break
        if all(abs(np.dot(x, r)) < 1.0 - angle_tol for r in reps):
            reps.append(x)
    return best, reps


def compact_smooth_conditions(T, target_p=2, tol: float = DEFAULT_TOL, starts: int = 64,
                              seed: int = 0) -> CompactSmoothReport:
    """Check unique norm attainment and smoothness of the image for ``l_2 -> l_p``."""
    T = as_matrix(T, "T")
    p = check_p(target_p)
    if p == 2:
        mt = norm_attaining_set(T, tol)
        value = mt.sigma1
        reps = [mt.basis[:, j] for j in range(mt.multiplicity)]
    else:
        if not np.any(T):
            raise ZeroOperatorError("T is the zero operator")
        value, reps = norming_vectors(T, p, starts, seed)
    x0 = reps[0]
    image = T @ x0
    image_smooth, _ = vector_smooth(image, p, tol)
    unique = len(reps) == 1
    return CompactSmoothReport(unique and image_smooth, unique, image_smooth, value, x0,
                               image, reps)
