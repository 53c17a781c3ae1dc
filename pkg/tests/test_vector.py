import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bjortho.errors import InputError
from bjortho.vector import (
    bj_vector,
    bj_vector_oracle,
    one_sided_derivatives,
    pnorm,
    right_additivity_probe,
    support_functionals,
    vector_smooth,
)

PS = [1.0, 1.5, 2.0, 3.0, math.inf]


def test_euclidean_axes():
    v = bj_vector([1.0, 0.0], [0.0, 1.0], 2)
    assert v.orthogonal
    assert v.norm_min == pytest.approx(1.0)


def test_l1_diagonal():
    # ||(1,1) + lam(1,-1)||_1 = 2 max(1, |lam|) >= 2
    v = bj_vector([1.0, 1.0], [1.0, -1.0], 1)
    assert v.orthogonal and v.details["oracle_orthogonal"]
    assert v.norm_min == pytest.approx(2.0)


def test_linf_parallel_not_orthogonal():
    v = bj_vector([1.0, 1.0], [1.0, 1.0], "inf")
    assert not v.orthogonal
    assert v.lambda_min == pytest.approx(-1.0, abs=1e-8)
    # the brute-force value at lam = -1/2 already beats ||x||
    assert pnorm(np.array([0.5, 0.5]), math.inf) == 0.5 < 1.0


def test_derivatives_match_finite_differences(rng):
    for p in PS:
        for _ in range(20):
            x, y = rng.uniform(-1, 1, (2, 5))
            dm, dp = one_sided_derivatives(x, y, p)
            h = 1e-7
            g0 = pnorm(x, p)
            fwd = (pnorm(x + h * y, p) - g0) / h
            bwd = (g0 - pnorm(x - h * y, p)) / h
            assert dp == pytest.approx(fwd, abs=1e-5)
            assert dm == pytest.approx(bwd, abs=1e-5)


@pytest.mark.parametrize("x, y, p", [([0.0, 0.0], [1.0, 0.0], 2), ([1.0], [1.0, 2.0], 2),
                                     ([1.0, 0.0], [0.0, 1.0], 0.5)])
def test_bj_vector_rejects(x, y, p):
    with pytest.raises(InputError):
        bj_vector(x, y, p)


def test_smooth_euclidean_functional():
    smooth, fs = vector_smooth([3.0, 4.0], 2)
    assert smooth
    np.testing.assert_allclose(fs[0].coefficients, [0.6, 0.8])


def test_l1_corner_functionals():
    smooth, fs = vector_smooth([1.0, 0.0], 1)
    assert not smooth
    coeffs = {tuple(f.coefficients) for f in fs}
    assert coeffs == {(1.0, 1.0), (1.0, -1.0)}
    for f in fs:
        assert f.dual_norm(1) == 1.0 and f([1.0, 0.0]) == 1.0


def test_linf_tie_functionals():
    smooth, fs = vector_smooth([1.0, 1.0], math.inf)
    assert not smooth
    assert sorted(tuple(f.coefficients) for f in fs) == [(0.0, 1.0), (1.0, 0.0)]


@given(st.lists(st.floats(-5, 5), min_size=1, max_size=6).filter(lambda v: max(map(abs, v)) > 1e-3),
       st.sampled_from(PS))
def test_support_functional_invariants(x, p):
    for f in support_functionals(x, p):
        assert f(x) == pytest.approx(pnorm(np.array(x), p), rel=1e-9, abs=1e-12)
        assert f.dual_norm(p) == pytest.approx(1.0, rel=1e-9)


def test_smooth_point_james_characterisation(rng):
    for p in (1.5, 2.0, 3.0):
        x = rng.uniform(-1, 1, 4)
        (f,) = support_functionals(x, p)
        for _ in range(100):
            y = rng.uniform(-1, 1, 4)
            if rng.random() < 0.5:
                y = y - f(y) / f.norm_value * x
            assert bj_vector(x, y, p, oracle=False).orthogonal == (abs(f(y)) <= 1e-9 * pnorm(y, p))


@given(st.integers(0, 2**32 - 1), st.sampled_from(PS), st.floats(0.1, 10), st.floats(0.1, 10),
       st.booleans(), st.booleans())
def test_homogeneity(seed, p, a, b, flip_a, flip_b):
    rng = np.random.default_rng(seed)
    x = rng.integers(-2, 3, 4).astype(float)
    if not x.any():
        x[0] = 1.0
    y = rng.uniform(-1, 1, 4)
    if seed % 2:
        f = support_functionals(x, p)[0]
        y = y - f(y) / f.norm_value * x
    a = -a if flip_a else a
    b = -b if flip_b else b
    assert bj_vector(x, y, p, oracle=False).orthogonal == \
        bj_vector(a * x, b * y, p, oracle=False).orthogonal


def test_derivative_test_matches_oracle(rng):
    for _ in range(300):
        p = PS[int(rng.integers(len(PS)))]
        x = rng.integers(-2, 3, 4).astype(float) if rng.random() < 0.5 else rng.uniform(-1, 1, 4)
        if not x.any():
            x[0] = 1.0
        y = rng.uniform(-1, 1, 4)
        if rng.random() < 0.5:
            fs = support_functionals(x, p)
            f = fs[int(rng.integers(len(fs)))]
            y = y - f(y) / f.norm_value * x
        assert bj_vector(x, y, p, 1e-7, oracle=False).orthogonal == \
            bj_vector_oracle(x, y, p, 1e-7).orthogonal


def test_probe_euclidean_finds_nothing():
    assert right_additivity_probe([1.0, 0.0], 2, trials=200, seed=3) is None


def test_probe_linf_corner():
    x = np.array([1.0, 1.0])
    # the hand-made pair first
    assert bj_vector(x, [0.0, 1.0], "inf").orthogonal
    assert bj_vector(x, [1.0, 0.0], "inf").orthogonal
    v = bj_vector_oracle(x, [1.0, 1.0], "inf")
    assert not v.orthogonal and v.norm_min < 1.0
    found = right_additivity_probe(x, "inf", seed=0)
    assert found is not None
    y, z = found
    assert not bj_vector_oracle(x, y + z, "inf").orthogonal


def test_probe_l1_corner():
    x = np.array([1.0, 0.0])
    y, z = np.array([-1.0, 1.0]), np.array([-1.0, -1.0])
    assert bj_vector(x, y, 1).orthogonal and bj_vector(x, z, 1).orthogonal
    assert pnorm(x + 0.5 * (y + z), 1) == 0.0
    assert not bj_vector(x, y + z, 1).orthogonal
    assert right_additivity_probe(x, 1, seed=5) is not None


def test_probe_is_seeded():
    a = right_additivity_probe([2.0, -2.0, 1.0], "inf", seed=11)
    b = right_additivity_probe([2.0, -2.0, 1.0], "inf", seed=11)
    np.testing.assert_array_equal(a[0], b[0])
    np.testing.assert_array_equal(a[1], b[1])
