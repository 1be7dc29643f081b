import pytest

from ptosc import eigensystem, make_params


@pytest.fixture
def params():
    """The worked parameter point: eta = 0.6, eigenvalues 1.9 / 1.1."""
    return make_params(2.0, 1.0, 0.3, 0.0)


@pytest.fixture
def es(params):
    return eigensystem(params)


@pytest.fixture
def swapped_params():
    """Same spectrum with the diagonal entries reversed (m1^2 < m2^2)."""
    return make_params(1.0, 2.0, 0.3, 0.0)


@pytest.fixture
def swapped_es(swapped_params):
    return eigensystem(swapped_params)
