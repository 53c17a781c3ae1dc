"""Exit criteria. Each test prints one ``[PASS]``/``[FAIL]`` line.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from bjortho.harness import (
    degenerate_matrix,
    diagonal_family,
    gapped_matrix,
    run_suite,
    trial_rng,
)
from bjortho.linalg import sym_eigen
from bjortho.operator import bj_operator_oracle
from bjortho.smoothness import additivity_probe, nonsmooth_witness, operator_smooth, split_is_exact
from bjortho.vector import right_additivity_probe, vector_smooth

pytestmark = pytest.mark.acceptance

TOL = 1e-7


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}")
        return ok
    return emit


def test_c1_oracle_equivalence(verdict):
    start = time.perf_counter()
    rep = run_suite("oracle-equivalence", seed=42, trials=1000, dims=(2, 8), tol=TOL)
    elapsed = time.perf_counter() - start
    ok = rep.agreements == 1000 and not rep.disagreements and elapsed < 60
    assert verdict(1, "spectral test == oracle", ok,
                   f"{rep.agreements}/1000 agree in {elapsed:.1f}s")


def test_c2_example_family(verdict):
    ns = (2, 5, 10, 50)
    exs = [diagonal_family(n, tol=1e-9) for n in ns]
    norm_ok = all(abs(e.norm_min - (1 - 1 / (2 * e.n))) <= 1e-6 for e in exs)
    lam_ok = all(abs(e.lambda_star - 1 / (2 * e.n)) <= 1e-4 for e in exs)
    verdict_ok = not any(e.orthogonal for e in exs)
    gaps = [e.gap for e in exs]
    decreasing = all(a > b > 0 for a, b in zip(gaps, gaps[1:]))
    toward_zero = all(abs(g * 2 * e.n - 1) <= 1e-6 for g, e in zip(gaps, exs))
    ok = norm_ok and lam_ok and verdict_ok and decreasing and toward_zero
    assert verdict(2, "truncated diagonal family", ok,
                   "gaps " + ", ".join(f"n={e.n}: {e.gap:.6f}" for e in exs))


def test_c3_witness_construction(verdict):
    exact = orth1 = orth2 = collapse = 0
    for t in range(200):
        rng = trial_rng(3, t)
        n = int(rng.integers(2, 9))
        T = degenerate_matrix(rng, n, 2, top=rng.uniform(0.5, 2.0))
        A1, A2 = nonsmooth_witness(T, 1e-9)
        exact += split_is_exact(T, (A1, A2))
        orth1 += bj_operator_oracle(T, A1, 2, TOL).orthogonal
        orth2 += bj_operator_oracle(T, A2, 2, TOL).orthogonal
        collapse += bj_operator_oracle(T, T, 2, TOL).norm_min <= 1e-9
    ok = exact == orth1 == orth2 == collapse == 200
    assert verdict(3, "non-smooth witness pair", ok,
                   f"A1+A2==T exactly {exact}/200, T_|_A1 {orth1}/200, T_|_A2 {orth2}/200, "
                   f"min||T+lam T||<=1e-9 {collapse}/200")


def test_c4_smoothness_classification(verdict):
    good = 0
    for t in range(200):
        rng = trial_rng(4, t)
        T = gapped_matrix(rng, int(rng.integers(2, 9)), 0.05)
        rep = operator_smooth(T, 1e-9)
        good += (rep.smooth
                 and abs(rep.hyperplane_sup - rep.sigma2) <= 1e-8 * rep.sigma2
                 and additivity_probe(T, 100, seed=t, tol=TOL) is None)
    for t in range(200):
        rng = trial_rng(40, t)
        T = degenerate_matrix(rng, int(rng.integers(2, 9)), 2, top=rng.uniform(0.5, 2.0))
        rep = operator_smooth(T, 1e-9)
        good += (not rep.smooth) and additivity_probe(T, 100, seed=t, tol=TOL) is not None
    assert verdict(4, "smoothness classification", good == 400, f"{good}/400")


def _nonsmooth_point(rng):
    n = int(rng.integers(2, 7))
    x = rng.uniform(-1, 1, n)
    if rng.random() < 0.5:
        x[rng.choice(n, size=int(rng.integers(1, n)), replace=False)] = 0.0
        return x, 1.0
    idx = rng.choice(n, size=int(rng.integers(2, n + 1)), replace=False)
    x[idx] = rng.choice([-1.0, 1.0], idx.size) * 1.5
    return x, math.inf


def _smooth_point(rng):
    n = int(rng.integers(2, 7))
    p = [1.0, 1.5, 2.0, 3.0, math.inf][int(rng.integers(5))]
    x = rng.uniform(0.1, 1.0, n) * rng.choice([-1.0, 1.0], n)
    if p == math.inf:
        x[int(rng.integers(n))] = 2.0
    return x, p


def test_c5_vector_layer(verdict):
    rep = run_suite("vector-derivative", seed=5, trials=1000, dims=(1, 6), tol=TOL)
    found = none = 0
    for t in range(100):
        x, p = _nonsmooth_point(trial_rng(50, t))
        assert not vector_smooth(x, p)[0]
        found += right_additivity_probe(x, p, trials=200, seed=t) is not None
        x, p = _smooth_point(trial_rng(51, t))
        assert vector_smooth(x, p)[0]
        none += right_additivity_probe(x, p, trials=200, seed=t) is None
    ok = rep.agreements == 1000 and found == 100 and none == 100
    assert verdict(5, "vector layer", ok,
                   f"derivative==oracle {rep.agreements}/1000, counterexample on non-smooth "
                   f"{found}/100, none on smooth {none}/100")


def test_c6_norm_attaining_set(verdict):
    rep = run_suite("mt-correctness", seed=6, trials=500, dims=(1, 8))
    assert verdict(6, "M_T basis and complement", rep.passed, f"{rep.agreements}/500")


def test_c7_adjoint(verdict):
    rep = run_suite("adjoint", seed=7, trials=500, dims=(2, 8), tol=TOL)
    assert verdict(7, "transpose invariance", rep.passed, f"{rep.agreements}/500")


def test_c8_eigensolver(verdict):
    worst_res = worst_orth = 0.0
    for t in range(200):
        rng = trial_rng(8, t)
        n = int(rng.integers(1, 33))
        M = rng.uniform(-1, 1, (n, n))
        S = M + M.T
        eig = sym_eigen(S)
        V = eig.vectors
        worst_res = max(worst_res, np.linalg.norm(S - V @ np.diag(eig.values) @ V.T)
                        / np.linalg.norm(S))
        worst_orth = max(worst_orth, np.max(np.abs(V.T @ V - np.eye(n))))
    ok = worst_res <= 1e-10 and worst_orth <= 1e-12
    assert verdict(8, "Jacobi eigensolver", ok,
                   f"max residual {worst_res:.2e}, max orthonormality defect {worst_orth:.2e}")


def test_c9_determinism(verdict):
    cmd = [sys.executable, "-m", "bjortho", "verify", "--suite", "oracle-equivalence",
           "--seed", "42", "--trials", "200", "--tol", "1e-7"]
    strict = [subprocess.run(cmd + ["--no-runtime"], capture_output=True, check=True).stdout
              for _ in range(2)]
    timed = [json.loads(subprocess.run(cmd, capture_output=True, check=True).stdout)
             for _ in range(2)]
    for doc in timed:
        doc.pop("runtime_seconds")
    ok = strict[0] == strict[1] and timed[0] == timed[1]
    assert verdict(9, "verify is reproducible", ok,
                   f"byte-identical: {strict[0] == strict[1]} ({len(strict[0])} bytes)")
