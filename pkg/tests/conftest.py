"""
Shared fixtures: the two planes of R^3 with their oblique null spaces, and seeded generators
"""

import numpy as np
import pytest

from src.linalg import Subspace


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def plane_z0():
    """{z = 0}"""
    return Subspace(np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))


@pytest.fixture
def plane_sum0():
    """{x + y + z = 0}"""
    return Subspace(np.array([[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]]))


@pytest.fixture
def plane_z0_nullspace():
    return Subspace(np.array([[0.0], [1.0], [1.0]]))


@pytest.fixture
def plane_sum0_nullspace():
    """{z = 0} intersected with {y = 0}: the x-axis"""
    return Subspace(np.array([[1.0], [0.0], [0.0]]))


@pytest.fixture
def example_plane():
    """span{(1,0,0), (0,1/sqrt2,1/sqrt2)}"""
    s = 1.0 / np.sqrt(2.0)
    return Subspace(np.array([[1.0, 0.0], [0.0, s], [0.0, s]]))
