import numpy as np
import pytest

from src.coefficients import build_coefficients, wave_map_coefficients
from src.config.constants import REGIME_EXAMPLES
from src.dynamics import State
from src.spectral import TorusGrid, leray_project, random_field


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def grid2():
    return TorusGrid(2, 32)


@pytest.fixture
def part3():
    return build_coefficients(enforce_parodi=False, **REGIME_EXAMPLES['part3'])


@pytest.fixture
def wave_map():
    return wave_map_coefficients(1.0, 1.0)


def random_state(grid, K, rng, amplitude=0.5):
    """各场在 |xi| <= K 内随机，u 经过 Leray 投影"""
    u = leray_project(random_field(grid, (grid.dim,), K, rng, amplitude, 'u'))
    d = random_field(grid, (3,), K, rng, amplitude, 'd')
    ddot = random_field(grid, (3,), K, rng, amplitude, 'ddot')
    return State(0.0, u, d, ddot)
