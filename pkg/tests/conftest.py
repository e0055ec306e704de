import pytest

from bettilab.catalog import elliptic_normal_curve, rational_normal_curve
from bettilab.projection import random_subspace


@pytest.fixture(scope="session")
def twisted_cubic():
    return rational_normal_curve(3)


@pytest.fixture(scope="session")
def rational_quartic():
    return rational_normal_curve(4)


@pytest.fixture(scope="session")
def projected_quartic(rational_quartic):
    """The rational normal quartic projected once into P^3."""
    return random_subspace(rational_quartic, 1, seed=1)


@pytest.fixture(scope="session")
def elliptic_quintic():
    return elliptic_normal_curve(5, seed=0)


@pytest.fixture(scope="session")
def projected_quintic(elliptic_quintic):
    return random_subspace(elliptic_quintic, 1, seed=1)
