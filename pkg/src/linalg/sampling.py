"""
Seeded random test data: subspaces, frames and orthogonal matrices
"""

from typing import Optional

import numpy as np
from scipy.stats import ortho_group

from src.linalg.core import Subspace


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_subspace(rng: np.random.Generator, n: int, k: int) -> Subspace:
    """Gaussian basis; full rank with probability one"""
    return Subspace(rng.standard_normal((n, k)))


def random_frame(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """M x N array of frame vectors (one per row) from a continuous distribution"""
    if m < n:
        raise ValueError(f"a frame of R^{n} needs at least {n} vectors, got {m}")
    return rng.standard_normal((m, n))


def random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    if n == 1:
        return np.array([[1.0 if rng.random() < 0.5 else -1.0]])
    return ortho_group.rvs(dim=n, random_state=rng)
