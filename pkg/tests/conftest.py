import numpy as np
import pytest

from ceslab import LowerTriangularMatrix
from ceslab.resolvent import gamma


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_triangular(rng, n, scale=1.0, real=False):
    shape = n * (n + 1) // 2
    data = rng.standard_normal(shape) * scale
    if not real:
        data = data + 1j * rng.standard_normal(shape) * scale
    return LowerTriangularMatrix(n, data)


def random_vector(rng, n, real=False):
    v = rng.standard_normal(n)
    if not real:
        v = v + 1j * rng.standard_normal(n)
    return v.astype(np.complex128)


def sample_lambda(rng, max_abs=5.0, min_gamma=0.05, predicate=None):
    """Uniform draw from the disk of radius max_abs, away from the poles."""
    while True:
        z = complex(rng.uniform(-max_abs, max_abs), rng.uniform(-max_abs, max_abs))
        if abs(z) > max_abs or gamma(z) < min_gamma:
            continue
        if predicate is not None and not predicate(z):
            continue
        return z
