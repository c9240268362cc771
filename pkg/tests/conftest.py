import numpy as np
import pytest

from qmap.classical import ClassicalMap, DampingSymbol
from qmap.quantization import PropagatorSpec
from qmap.utils import set_log_level


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def cat():
    return ClassicalMap(m=1, alpha=0.0)


@pytest.fixture
def kicked():
    return ClassicalMap(m=1, alpha=0.05)


@pytest.fixture
def a1():
    return DampingSymbol.a1()


@pytest.fixture
def a2():
    return DampingSymbol.a2()


@pytest.fixture
def make_spec(kicked, a2):
    """PropagatorSpec factory defaulting to a2 on the kicked cat map"""
    def factory(N, damping=None, cmap=None):
        return PropagatorSpec(cmap or kicked, damping or a2, N)
    return factory


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(rng, n):
    Q, R = np.linalg.qr(random_complex(rng, (n, n)))
    return Q * (np.diag(R) / np.abs(np.diag(R)))[None, :]


def random_hermitian(rng, n):
    A = random_complex(rng, (n, n))
    return 0.5 * (A + A.conj().T)


@pytest.fixture(autouse=True)
def reset_log_level():
    yield
    set_log_level('INFO')
