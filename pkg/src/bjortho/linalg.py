"""Dense real linear algebra and scalar convex minimisation.

Everything here works on plain ``numpy`` float64 arrays. The symmetric
eigensolver is a cyclic Jacobi iteration written out by hand (the inner
kernel is compiled with numba when it is importable); singular values are
taken from the eigendecomposition of the Gram matrix ``T^T T``.

The Gram route squares the condition number, so small singular values lose
roughly half their digits. The top singular value and its subspace, which
is what the rest of the package cares about, are unaffected at the sizes
this is meant for (n up to a few dozen).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, InputError, NumericalError

try:
    from numba import njit
except ImportError:  # pragma: no cover - pure python fallback
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn


EIGEN_TOL = 1e-14
MAX_SWEEPS = 100
LAMBDA_CAP = 1e12
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def as_matrix(obj, name: str = "matrix") -> np.ndarray:
    """Validate ``obj`` as a finite, non-empty 2-D float64 array (copied)."""
    try:
        arr = np.array(obj, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: not a numeric matrix ({exc})") from None
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise InputError(f"{name}: expected a non-empty 2-D array, got shape {arr.shape}")
    bad = np.argwhere(~np.isfinite(arr))
    if bad.size:
        i, j = bad[0]
        raise InputError(f"{name}: non-finite entry at row {i}, column {j}")
    return arr


def as_vector(obj, name: str = "vector") -> np.ndarray:
    try:
        arr = np.array(obj, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: not a numeric vector ({exc})") from None
    if arr.ndim != 1 or arr.shape[0] == 0:
        raise InputError(f"{name}: expected a non-empty 1-D array, got shape {arr.shape}")
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise InputError(f"{name}: non-finite entry at index {bad[0]}")
    return arr


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a symmetric matrix, values in descending order.

    ``vectors[:, i]`` belongs to ``values[i]``; ``residual`` is the largest
    ``||S v_i - values[i] v_i||_2`` over the columns.
    """

    values: np.ndarray
    vectors: np.ndarray
    residual: float
    sweeps: int


@njit(cache=True)
def _jacobi_kernel(a, v, thresh, max_sweeps):
    n = a.shape[0]
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= thresh:
                    continue
                rotated = True
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
        if not rotated:
            return sweep + 1
    return -1


def sym_eigen(S, tol: float = EIGEN_TOL) -> EigenDecomposition:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Rotations are applied until every off-diagonal entry is at most
    ``tol * ||S||_F``. Equal eigenvalues keep their diagonal order (stable
    sort), so the output is deterministic.
    """
    S = as_matrix(S, "S")
    n, m = S.shape
    if n != m:
        raise InputError(f"S must be square, got {n}x{m}")
    fro = float(np.linalg.norm(S))
    asym = float(np.max(np.abs(S - S.T)))
    if asym > tol * fro:
        raise InputError(f"S is not symmetric: max |S_ij - S_ji| = {asym:.3e}")
    a = np.ascontiguousarray(0.5 * (S + S.T))
    v = np.eye(n)
    if fro == 0.0:
        return EigenDecomposition(np.zeros(n), v, 0.0, 0)
    sweeps = _jacobi_kernel(a, v, tol * fro, MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")
    diag = np.diag(a).copy()
    order = np.argsort(-diag, kind="stable")
    values = diag[order]
    vectors = v[:, order]
    residual = float(np.max(np.linalg.norm(S @ vectors - vectors * values, axis=0)))
    return EigenDecomposition(values, vectors, residual, sweeps)


def gram(T: np.ndarray) -> np.ndarray:
    G = T.T @ T
    return 0.5 * (G + G.T)


def singular_values(T, tol: float = EIGEN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Singular values (descending) and right singular vectors (as columns).

    One value per column of ``T``; if ``T`` has fewer rows than columns the
    trailing values are zero.
    """
    T = as_matrix(T, "T")
    eig = sym_eigen(gram(T), tol)
    return np.sqrt(np.clip(eig.values, 0.0, None)), eig.vectors


def spectral_norm(T) -> float:
    return float(singular_values(T)[0][0])


def parse_norm_selector(p) -> float:
    """Map ``1``, ``2``, ``'inf'``, ``math.inf`` ... to a float ``p``."""
    if isinstance(p, str):
        key = p.strip().lower()
        if key in ("inf", "infinity", "max", "oo"):
            return math.inf
        try:
            p = float(key)
        except ValueError:
            raise InputError(f"unrecognised norm selector {p!r}") from None
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise InputError(f"unrecognised norm selector {p!r}") from None
    if math.isnan(p):
        raise InputError("norm selector is NaN")
    return p


def operator_norm(T, p=2) -> float:
    """Induced operator norm for ``p`` in {1, 2, inf}."""
    p = parse_norm_selector(p)
    T = as_matrix(T, "T")
    if p == 1:
        return float(np.max(np.sum(np.abs(T), axis=0)))
    if p == math.inf:
        return float(np.max(np.sum(np.abs(T), axis=1)))
    if p == 2:
        return spectral_norm(T)
    raise InputError(f"operator norm supports p in {{1, 2, inf}}, got {p}")


def minimize_scalar_convex(
    f: Callable[[float], float],
    width: float = 1.0,
    tol: float = 1e-10,
    cap: float = LAMBDA_CAP,
) -> tuple[float, float]:
    """Minimise a convex function of one real variable.

    A bracket is grown by doubling away from 0 (starting at ``+-width``) until
    the function turns upward, then refined by golden-section search until the
    bracket is narrower than ``tol * max(width, |a|, |b|)``. Returns the best
    ``(lam, f(lam))`` seen, which is never worse than ``f(0)``.
    """
    if not (width > 0.0 and math.isfinite(width)):
        raise InputError(f"bracket width must be positive and finite, got {width}")

    best = [0.0, math.inf]

    def ev(lam: float) -> float:
        val = float(f(lam))
        if not math.isfinite(val):
            raise NumericalError(f"objective is non-finite at lambda={lam!r}")
        if val < best[1]:
            best[0], best[1] = lam, val
        return val

    f0 = ev(0.0)
    fr = ev(width)
    fl = ev(-width)
    if fr >= f0 and fl >= f0:
        a, b = -width, width
    else:
        sign = 1.0 if fr < f0 else -1.0
        prev, cur, fcur = 0.0, width, (fr if sign > 0 else fl)
        while True:
            nxt = 2.0 * cur
            if nxt > cap:
                raise ConvergenceError(
                    f"bracket expansion passed |lambda| = {cap:g}; objective looks non-coercive"
                )
            fn = ev(sign * nxt)
            if fn >= fcur:
                break
            prev, cur, fcur = cur, nxt, fn
        a, b = sorted((sign * prev, sign * nxt))

    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = ev(c), ev(d)
    while b - a > tol * max(width, abs(a), abs(b)):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = ev(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = ev(d)
    return best[0], best[1]
