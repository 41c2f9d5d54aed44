import pytest

from toricgf import Cone

SEGRE = [(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)]


@pytest.fixture
def segre():
    return Cone(SEGRE)


@pytest.fixture
def orthant2():
    return Cone([(1, 0), (0, 1)])


@pytest.fixture
def skew2():
    return Cone([(1, 0), (1, 2)])
