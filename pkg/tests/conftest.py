import numpy as np
import pytest

from sepmaps import BipartiteOperator, Dims


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_hermitian(dims, rng, scale=1.0):
    size = Dims(*dims).size
    g = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    return BipartiteOperator(Dims(*dims), scale * (g + g.conj().T) / 2)


def max_abs(a, b):
    return float(np.abs(a - b).max())
