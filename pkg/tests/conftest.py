import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def brute_min(f, lo=-3.0, hi=3.0, num=600001):
    """Grid minimum of a scalar function; independent of golden-section search."""
    grid = np.linspace(lo, hi, num)
    vals = np.array([f(g) for g in grid])
    i = int(np.argmin(vals))
    return grid[i], vals[i]
