"""Randomised verification suites and the truncated diagonal family.

Each suite pairs two independent routes to the same yes/no question and
counts how often they agree. Trials draw from ``numpy.random.Generator(PCG64)``
seeded with ``SeedSequence([seed, trial_index])``, so any single trial can be
regenerated without running the ones before it, and the inputs of every
disagreement are stored verbatim (floats round-trip through JSON) so that
:func:`replay_record` reproduces it.

Report schema (version 1)::

    {"schema_version": 1, "suite": str, "seed": int, "trials": int,
     "dims": [lo, hi], "tol": float, "agreements": int,
     "disagreements": [{"trial", "seed", "inputs", "left", "right"}, ...],
     "runtime_seconds": float | null}
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import InputError, NumericalError
from .linalg import singular_values, spectral_norm
from .operator import (
    adjoint_invariance,
    bj_operator_oracle,
    bj_operator_spectral,
    descent_lambda,
    norm_attaining_set,
    orthogonalize_against,
    sample_unit_sphere,
)
from .smoothness import additivity_probe, operator_smooth
from .vector import bj_vector, bj_vector_oracle, support_functionals

SCHEMA_VERSION = 1
DEGENERATE_FRACTION = 0.2
VECTOR_PS = (1.0, 1.5, 2.0, 3.0, math.inf)


# -- truncated diagonal family ---------------------------------------------


@dataclass(frozen=True)
class DiagonalFamily:
    n: int
    T: np.ndarray
    A: np.ndarray
    gap: float
    lambda_star: float
    norm_min: float
    orthogonal: bool

    def to_dict(self) -> dict:
        return {
            "name": "2.5",
            "n": self.n,
            "gap": self.gap,
            "lambda_star": self.lambda_star,
            "norm_min": self.norm_min,
            "orthogonal": self.orthogonal,
            "closed_form_gap": 1.0 / (2 * self.n),
        }


def diagonal_family_operator(n: int) -> np.ndarray:
    """``diag(-1, 1/2, 2/3, ..., 1 - 1/n)``: ``e_1 -> -e_1``, ``e_k -> (1 - 1/k) e_k``."""
    if n < 2:
        raise InputError(f"n must be at least 2, got {n}")
    return np.diag([-1.0] + [1.0 - 1.0 / k for k in range(2, n + 1)])


def diagonal_family(n: int, tol: float = 1e-9) -> DiagonalFamily:
    """Truncation of the diagonal operator that is BJ-orthogonal to I only in the limit.

    For finite ``n`` the minimum of ``||T_n + lam I||`` is ``1 - 1/(2n)`` at
    ``lam = 1/(2n)``, so ``T_n`` is never orthogonal to ``I``; the returned
    values come from the oracle, not the closed form.
    """
    T = diagonal_family_operator(n)
    A = np.eye(n)
    verdict = bj_operator_oracle(T, A, 2, tol)
    return DiagonalFamily(n, T, A, verdict.base_norm - verdict.norm_min, verdict.lambda_min,
                          verdict.norm_min, verdict.orthogonal)


# -- random inputs ------------------------------------------------------------


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def degenerate_matrix(rng: np.random.Generator, n: int, multiplicity: int = 2,
                      top: float = 1.0, gap: float = 0.1) -> np.ndarray:
    """``U diag(top, ..., top, s_k+1, ...) V^T`` with ``top`` repeated ``multiplicity`` times."""
    multiplicity = min(multiplicity, n)
    rest = rng.uniform(0.0, top - gap, n - multiplicity)
    sig = np.concatenate([np.full(multiplicity, top), np.sort(rest)[::-1]])
    return random_orthogonal(rng, n) @ np.diag(sig) @ random_orthogonal(rng, n).T


def random_matrix(rng: np.random.Generator, n: int, m: Optional[int] = None) -> np.ndarray:
    return rng.uniform(-1.0, 1.0, (n, n if m is None else m))


def random_operator(rng: np.random.Generator, dims) -> np.ndarray:
    n = int(rng.integers(dims[0], dims[1] + 1))
    if rng.random() < DEGENERATE_FRACTION and n >= 2:
        mult = int(rng.integers(2, min(3, n) + 1))
        return degenerate_matrix(rng, n, mult, top=rng.uniform(0.5, 2.0))
    return random_matrix(rng, n)


def gapped_matrix(rng: np.random.Generator, n: int, min_gap: float = 0.05) -> np.ndarray:
    while True:
        T = random_matrix(rng, n)
        s = singular_values(T)[0]
        if s[0] - s[1] >= min_gap:
            return T


def _lists(M) -> list:
    return np.asarray(M, dtype=np.float64).tolist()


def _p_json(p: float):
    return "inf" if p == math.inf else p


def _p_value(p) -> float:
    return math.inf if p == "inf" else float(p)


# -- suites: generate(rng, dims) -> inputs, check(inputs, tol) -> (left, right)


def _gen_pair(rng, dims):
    T = random_operator(rng, dims)
    return {"T": _lists(T), "A": _lists(random_matrix(rng, T.shape[0]))}


def _check_oracle_equivalence(inp, tol):
    T, A = np.array(inp["T"]), np.array(inp["A"])
    return (bj_operator_spectral(T, A, tol, minimize=False).orthogonal,
            bj_operator_oracle(T, A, 2, tol).orthogonal)


def _check_adjoint(inp, tol):
    return adjoint_invariance(np.array(inp["T"]), np.array(inp["A"]), tol)


def _gen_witness(rng, dims):
    T = random_operator(rng, dims)
    mt = norm_attaining_set(T)
    w = sample_unit_sphere(mt.basis, 2 * mt.multiplicity + 1, rng)[:, -1]
    A = orthogonalize_against(T, random_matrix(rng, T.shape[0]), w)
    return {"T": _lists(T), "A": _lists(A)}


def witness_is_valid(T, A, verdict) -> bool:
    w = verdict.witness
    if w is None:
        return False
    s1 = verdict.base_norm
    norm_a = spectral_norm(A)
    return (abs(np.linalg.norm(w) - 1.0) <= 1e-9
            and abs(np.linalg.norm(T @ w) - s1) <= 1e-7 * s1
            and abs(np.dot(T @ w, A @ w)) <= 1e-7 * s1 * norm_a)


def _check_witness(inp, tol):
    T, A = np.array(inp["T"]), np.array(inp["A"])
    v = bj_operator_spectral(T, A, tol, minimize=False)
    left = bool(v.orthogonal and witness_is_valid(T, A, v))
    return left, bj_operator_oracle(T, A, 2, tol).orthogonal


def _gen_smoothness(rng, dims):
    n = int(rng.integers(max(dims[0], 2), dims[1] + 1))
    if rng.random() < 0.5:
        T = gapped_matrix(rng, n)
    else:
        T = degenerate_matrix(rng, n, 2, top=rng.uniform(0.5, 2.0))
    return {"T": _lists(T), "probe_seed": int(rng.integers(2**31))}


def _check_smoothness(inp, tol):
    T = np.array(inp["T"])
    rep = operator_smooth(T, tol)
    if rep.smooth:
        left = "smooth" if abs(rep.hyperplane_sup - rep.sigma2) <= 1e-8 * rep.sigma2 \
            else "hyperplane-sup-mismatch"
    else:
        left = "non-smooth"
    found = additivity_probe(T, 100, inp["probe_seed"], tol)
    return left, "non-smooth" if found is not None else "smooth"


def _gen_vector(rng, dims):
    n = int(rng.integers(dims[0], min(dims[1], 6) + 1))
    p = VECTOR_PS[int(rng.integers(len(VECTOR_PS)))]
    if rng.random() < 0.5:
        x = rng.uniform(-1.0, 1.0, n)
    else:
        x = rng.integers(-2, 3, n).astype(float)
        if not np.any(x):
            x[int(rng.integers(n))] = 1.0
    y = rng.uniform(-1.0, 1.0, n)
    if rng.random() < 0.5:
        fs = support_functionals(x, p)
        f = fs[int(rng.integers(len(fs)))]
        y = y - f(y) / f.norm_value * x
    return {"x": _lists(x), "y": _lists(y), "p": _p_json(p)}


def _check_vector(inp, tol):
    x, y, p = np.array(inp["x"]), np.array(inp["y"]), _p_value(inp["p"])
    return (bj_vector(x, y, p, tol, oracle=False).orthogonal,
            bj_vector_oracle(x, y, p, tol).orthogonal)


def _gen_descent(rng, dims):
    inp = _gen_pair(rng, dims)
    inp["sample_seed"] = int(rng.integers(2**31))
    return inp


def _check_descent(inp, tol):
    T, A = np.array(inp["T"]), np.array(inp["A"])
    try:
        cert = descent_lambda(T, A, tol, seed=inp["sample_seed"])
    except NumericalError:
        left = "failed"
    else:
        if cert is None:
            left = "orthogonal"
        elif cert.operator_norm_after < cert.sigma1 and cert.max_over_MT < cert.sigma1:
            left = "descent"
        else:
            left = "invalid-certificate"
    right = "orthogonal" if bj_operator_oracle(T, A, 2, tol).orthogonal else "descent"
    return left, right


def _gen_mt(rng, dims):
    if rng.random() < DEGENERATE_FRACTION and dims[1] >= 2:
        n = int(rng.integers(max(dims[0], 2), dims[1] + 1))
        T = degenerate_matrix(rng, n, int(rng.integers(2, min(3, n) + 1)))
    else:
        n, m = (int(v) for v in rng.integers(dims[0], dims[1] + 1, 2))
        T = random_matrix(rng, n, m)
    return {"T": _lists(T), "y": _lists(rng.standard_normal(T.shape[1]))}


def check_norm_attaining_set(T, y0) -> bool:
    mt = norm_attaining_set(T)
    s1 = mt.sigma1
    cols_ok = all(abs(np.linalg.norm(T @ q) - s1) <= 1e-9 * s1 for q in mt.basis.T)
    Q = mt.basis
    y = y0 - Q @ (Q.T @ y0)
    y = y - Q @ (Q.T @ y)
    ny = np.linalg.norm(y)
    if ny <= 1e-12 * np.linalg.norm(y0):
        return cols_ok
    return cols_ok and np.linalg.norm(T @ (y / ny)) <= mt.sigma_out + 1e-9


def _check_mt(inp, tol):
    return check_norm_attaining_set(np.array(inp["T"]), np.array(inp["y"])), True


@dataclass(frozen=True)
class Suite:
    generate: Callable
    check: Callable
    description: str


SUITES = {
    "oracle-equivalence": Suite(_gen_pair, _check_oracle_equivalence,
                                "spectral test vs golden-section oracle"),
    "adjoint": Suite(_gen_pair, _check_adjoint, "verdict for (T, A) vs (T^T, A^T)"),
    "witness-validity": Suite(_gen_witness, _check_witness,
                              "A made orthogonal at a point of M_T: witness valid vs oracle"),
    "smoothness-additivity": Suite(_gen_smoothness, _check_smoothness,
                                   "sigma1 simplicity vs right-additivity probe"),
    "vector-derivative": Suite(_gen_vector, _check_vector, "l_p derivative test vs oracle"),
    "descent": Suite(_gen_descent, _check_descent, "descent certificate vs oracle"),
    "mt-correctness": Suite(_gen_mt, _check_mt, "M_T basis and complement bound"),
}


# -- reports ------------------------------------------------------------------


@dataclass
class VerificationReport:
    suite: str
    seed: int
    trials: int
    dims: tuple
    tol: float
    agreements: int = 0
    disagreements: list = field(default_factory=list)
    runtime_seconds: Optional[float] = None

    @property
    def passed(self) -> bool:
        return not self.disagreements and self.agreements == self.trials

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "dims": list(self.dims),
            "tol": self.tol,
            "agreements": self.agreements,
            "disagreements": sorted(self.disagreements, key=lambda r: r["trial"]),
            "runtime_seconds": self.runtime_seconds,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def run_trial(name: str, seed: int, trial: int, dims=(2, 8), tol: float = 1e-7):
    """Regenerate and check one trial; returns ``(agree, record)``."""
    suite = SUITES[name]
    inputs = suite.generate(trial_rng(seed, trial), dims)
    left, right = suite.check(inputs, tol)
    record = {"suite": name, "trial": trial, "seed": seed, "tol": tol,
              "inputs": inputs, "left": left, "right": right}
    return left == right, record


def run_suite(name: str, seed: int = 0, trials: int = 100, dims=(2, 8),
              tol: float = 1e-7, timed: bool = True) -> VerificationReport:
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if trials < 0:
        raise InputError("trials must be non-negative")
    lo, hi = int(dims[0]), int(dims[1])
    if lo < 1 or hi < lo:
        raise InputError(f"bad dimension range {dims!r}")
    start = time.perf_counter()
    report = VerificationReport(name, seed, trials, (lo, hi), tol)
    for t in range(trials):
        agree, record = run_trial(name, seed, t, (lo, hi), tol)
        if agree:
            report.agreements += 1
        else:
            report.disagreements.append(record)
    if timed:
        report.runtime_seconds = time.perf_counter() - start
    return report


def replay_record(record: dict):
    """Recompute ``(left, right)`` from a disagreement record's stored inputs."""
    return SUITES[record["suite"]].check(record["inputs"], record["tol"])
