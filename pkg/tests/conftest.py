import numpy as np
import pytest

from luinv.states import MixedState, PureState


def random_pure(dims, seed):
    rng = np.random.default_rng(seed)
    n = int(np.prod(dims))
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return PureState(tuple(dims), v / np.linalg.norm(v))


def random_mixed(dims, rank, seed):
    rng = np.random.default_rng(seed)
    n = int(np.prod(dims))
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    rho = g @ g.conj().T
    return MixedState(tuple(dims), rho / np.trace(rho).real)


def ghz(n=3):
    v = np.zeros(2 ** n, dtype=complex)
    v[0] = v[-1] = 1 / np.sqrt(2)
    return PureState((2,) * n, v)


def bell():
    return PureState((2, 2), np.array([1, 0, 0, 1]) / np.sqrt(2))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
