"""Birkhoff-James orthogonality and smoothness in the sequence spaces l_p^n.

``x`` is BJ-orthogonal to ``y`` when ``||x|| <= ||x + lam*y||`` for every real
``lam``. Since ``g(lam) = ||x + lam*y||_p`` is convex, that holds exactly when
the one-sided derivatives at 0 straddle zero (``g'_-(0) <= 0 <= g'_+(0)``);
the derivative test below uses closed forms for those. The convex minimiser
in :mod:`bjortho.linalg` gives an independent check of the same definition.

p = 1 and p = inf are the non-smooth members of the family; for them the
zero set (p = 1) and the active set of maximal coordinates (p = inf) are
decided with a tolerance relative to ``||x||``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InputError
from .linalg import as_vector, minimize_scalar_convex, parse_norm_selector
from .verdict import DERIVATIVE, ORACLE, BjVerdict

DEFAULT_TOL = 1e-9
MAX_ENUMERATED_ZEROS = 10


def check_p(p) -> float:
    p = parse_norm_selector(p)
    if p < 1:
        raise InputError(f"p must lie in [1, inf], got {p}")
    return p


def dual_exponent(p: float) -> float:
    if p == 1:
        return math.inf
    if p == math.inf:
        return 1.0
    return p / (p - 1.0)


def pnorm(x: np.ndarray, p: float) -> float:
    ax = np.abs(x)
    if p == math.inf:
        return float(np.max(ax))
    if p == 1:
        return float(np.sum(ax))
    if p == 2:
        return float(np.linalg.norm(x))
    top = float(np.max(ax))
    if top == 0.0:
        return 0.0
    return top * float(np.sum((ax / top) ** p)) ** (1.0 / p)


@dataclass(frozen=True)
class SupportFunctional:
    """Linear functional ``f`` of dual norm 1 with ``f(attained_at) = ||attained_at||``."""

    coefficients: np.ndarray
    attained_at: np.ndarray
    norm_value: float

    def __call__(self, y) -> float:
        return float(np.dot(self.coefficients, y))

    def dual_norm(self, p: float) -> float:
        return pnorm(self.coefficients, dual_exponent(p))

    def to_dict(self) -> dict:
        return {
            "coefficients": [float(c) for c in self.coefficients],
            "norm_value": self.norm_value,
        }


def _prepare(x, p, name="x") -> tuple[np.ndarray, float, float]:
    p = check_p(p)
    x = as_vector(x, name)
    nx = pnorm(x, p)
    if nx == 0.0:
        raise InputError(f"{name} must be non-zero")
    return x, p, nx


def one_sided_derivatives(x, y, p, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Return ``(d_minus, d_plus)`` of ``lam -> ||x + lam*y||_p`` at ``lam = 0``."""
    x, p, nx = _prepare(x, p)
    y = as_vector(y, "y")
    if y.shape != x.shape:
        raise InputError(f"dimension mismatch: x has {x.size} entries, y has {y.size}")
    if p == 1:
        zero = np.abs(x) <= tol * nx
        core = float(np.sum(np.sign(x[~zero]) * y[~zero]))
        spread = float(np.sum(np.abs(y[zero])))
        return core - spread, core + spread
    if p == math.inf:
        active = np.abs(x) >= nx * (1.0 - tol)
        vals = np.sign(x[active]) * y[active]
        return float(np.min(vals)), float(np.max(vals))
    w = x / nx
    d = float(np.sum(np.sign(w) * np.abs(w) ** (p - 1.0) * y))
    return d, d


def _oracle_minimum(x, y, p, nx) -> tuple[float, float]:
    ny = pnorm(y, p)
    if ny == 0.0:
        return 0.0, nx
    # search along y scaled to the length of x so the bracket cap is scale-free
    scale = nx / ny
    step = y * scale
    mu, val = minimize_scalar_convex(lambda m: pnorm(x + m * step, p), width=1.0, tol=1e-10)
    return mu * scale, val


def bj_vector_oracle(x, y, p=2, tol: float = DEFAULT_TOL) -> BjVerdict:
    """Decide ``x _|_B y`` straight from the definition, by minimising over lam."""
    x, p, nx = _prepare(x, p)
    y = as_vector(y, "y")
    if y.shape != x.shape:
        raise InputError(f"dimension mismatch: x has {x.size} entries, y has {y.size}")
    lam, val = _oracle_minimum(x, y, p, nx)
    return BjVerdict(val >= nx * (1.0 - tol), lam, val, ORACLE, base_norm=nx)


def bj_vector(x, y, p=2, tol: float = DEFAULT_TOL, oracle: bool = True) -> BjVerdict:
    """Birkhoff-James orthogonality of ``x`` to ``y`` in l_p by the derivative test.

    The verdict compares the one-sided derivatives against ``tol * ||y||_p``.
    With ``oracle=True`` the minimiser of ``||x + lam*y||_p`` is recorded as
    well, together with the oracle's own verdict under ``details``.
    """
    x, p, nx = _prepare(x, p)
    d_minus, d_plus = one_sided_derivatives(x, y, p, tol)
    y = np.asarray(y, dtype=np.float64)
    slack = tol * pnorm(y, p)
    orthogonal = d_minus <= slack and d_plus >= -slack
    details = {"d_minus": d_minus, "d_plus": d_plus}
    lam, val = math.nan, math.nan
    if oracle:
        lam, val = _oracle_minimum(x, y, p, nx)
        details["oracle_orthogonal"] = bool(val >= nx * (1.0 - tol))
    return BjVerdict(orthogonal, lam, val, DERIVATIVE, base_norm=nx, details=details)


def support_functionals(x, p=2, tol: float = DEFAULT_TOL) -> list[SupportFunctional]:
    """Norming functionals of ``x``: the unique one, or the extreme ones if ``x`` is not smooth.

    For p = 1 with many zero coordinates only the two all-equal sign choices
    on the zero set are returned once enumeration would exceed
    ``2**MAX_ENUMERATED_ZEROS`` functionals.
    """
    x, p, nx = _prepare(x, p)
    n = x.size
    if p == 1:
        zero = np.abs(x) <= tol * nx
        base = np.sign(x)
        base[zero] = 0.0
        zidx = np.flatnonzero(zero)
        if zidx.size <= MAX_ENUMERATED_ZEROS:
            patterns = itertools.product((1.0, -1.0), repeat=zidx.size)
        else:
            patterns = [(1.0,) * zidx.size, (-1.0,) * zidx.size]
        coeffs = []
        for pat in patterns:
            c = base.copy()
            c[zidx] = pat
            coeffs.append(c)
    elif p == math.inf:
        active = np.flatnonzero(np.abs(x) >= nx * (1.0 - tol))
        coeffs = []
        for i in active:
            c = np.zeros(n)
            c[i] = np.sign(x[i])
            coeffs.append(c)
    else:
        w = x / nx
        coeffs = [np.sign(w) * np.abs(w) ** (p - 1.0)]
    return [SupportFunctional(c, x.copy(), nx) for c in coeffs]


def vector_smooth(x, p=2, tol: float = DEFAULT_TOL) -> tuple[bool, list[SupportFunctional]]:
    """Smoothness of ``x`` in l_p: smooth iff it has exactly one norming functional."""
    fs = support_functionals(x, p, tol)
    return len(fs) == 1, fs


def right_additivity_probe(
    x, p=2, trials: int = 200, seed: int = 0, tol: float = DEFAULT_TOL
) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """Search for ``y, z`` with ``x _|_B y``, ``x _|_B z`` but not ``x _|_B (y + z)``.

    Candidates are random vectors pushed into the orthogonal set of ``x`` along
    the kernel of a randomly chosen norming functional. A pair is returned only
    after the convex-minimisation oracle has confirmed all three verdicts.
    """
    x, p, nx = _prepare(x, p)
    fs = support_functionals(x, p, tol)
    rng = np.random.default_rng(seed)
    n = x.size
    for _ in range(trials):
        ia, ib = rng.integers(len(fs), size=2)
        y0 = rng.uniform(-1.0, 1.0, n) * nx
        z0 = rng.uniform(-1.0, 1.0, n) * nx
        y = y0 - fs[ia](y0) / nx * x
        z = z0 - fs[ib](z0) / nx * x
        if not (bj_vector(x, y, p, tol, oracle=False).orthogonal
                and bj_vector(x, z, p, tol, oracle=False).orthogonal):
            continue
        if bj_vector(x, y + z, p, tol, oracle=False).orthogonal:
            continue
        if (bj_vector_oracle(x, y, p, tol).orthogonal
                and bj_vector_oracle(x, z, p, tol).orthogonal
                and not bj_vector_oracle(x, y + z, p, tol).orthogonal):
            return y, z
    return None
