import numpy as np
import pytest

from rieszwalk import RIESZ, evolve, verblunsky_parameters
from rieszwalk.walk import walk_blocks

HORIZON = 1365


@pytest.fixture(scope="session")
def riesz_blocks():
    return walk_blocks(RIESZ, HORIZON)


@pytest.fixture(scope="session")
def riesz_states():
    """States at t = 0 .. 1365 from [1, 0] at the origin."""
    return evolve((1, 0), RIESZ, HORIZON)


@pytest.fixture(scope="session")
def riesz_states_beta():
    """States at t = 0 .. 1365 from [0, 1] at the origin."""
    return evolve((0, 1), RIESZ, HORIZON)


@pytest.fixture(scope="session")
def riesz_exact_alphas():
    return verblunsky_parameters(RIESZ, 4 * 64 + 4)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_spinors(rng, n):
    z = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    return z / np.linalg.norm(z, axis=1, keepdims=True)
