import numpy as np
import pytest

from framelab import FrameSystem


def random_hermitian(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return m + m.conj().T


def random_frame(rng, d, n=None, label="random"):
    """Generic random spanning system (almost surely a frame)."""
    if n is None:
        n = d
    vectors = rng.normal(size=(n, d)) + 1j * rng.normal(size=(n, d))
    return FrameSystem.from_vectors(vectors, label=label)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
