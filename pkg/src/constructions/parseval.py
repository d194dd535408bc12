"""
Parseval fusion frame from a conventional frame

Each x_i spans a line W_i. P_i keeps a single nonzero column, x_i / x_{i,j_i} at
column j_i, so P_i^T P_i has one diagonal entry and suitable weights make the sum
of the weighted Gram matrices the identity.
"""

from collections import Counter
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from src.config import Tolerances, get_tolerances
from src.errors import DimensionMismatchError, InputError, NoValidPermutationError, NotSpanningError, ZeroVectorError
from src.fusion import FusionFrame, WeightedProjection
from src.linalg import Subspace, as_matrix, as_vector, complement_indices, coordinate_subspace, frozen, numerical_rank
from src.logging_config import get_logger
from src.pffs import PffsSystem, build_pffs
from src.projections import ObliqueProjection

logger = get_logger('constructions.parseval')

WEIGHT_SCHEMES = ('shared', 'pooled')


@dataclass(frozen=True, eq=False)
class ParsevalConstruction:
    """Everything the construction produces, indexed by the reordered vectors

    ``vectors`` holds the input frame reordered so its first N rows form a basis
    with nonzero diagonal; ``permutation[i]`` is the input row placed at i.
    ``weights`` are v_i^2.
    """

    vectors: np.ndarray
    permutation: List[int]
    pivots: List[int]
    weights: np.ndarray
    duals: np.ndarray
    perturbations: np.ndarray
    parseval_vectors: np.ndarray
    frame: FusionFrame

    def __post_init__(self):
        for name in ('vectors', 'weights', 'duals', 'perturbations', 'parseval_vectors'):
            object.__setattr__(self, name, frozen(getattr(self, name)))

    @property
    def ambient(self) -> int:
        return self.vectors.shape[1]

    @property
    def count(self) -> int:
        return self.vectors.shape[0]

    def multiplicities(self) -> List[int]:
        """|J_k|: how many vectors beyond the basis share pivot k"""
        extra = Counter(self.pivots[self.ambient:])
        return [extra.get(k, 0) for k in range(self.ambient)]

    def _vector(self, f) -> np.ndarray:
        f = as_vector(f, 'f')
        if f.shape[0] != self.ambient:
            raise DimensionMismatchError(f"f has length {f.shape[0]}, expected {self.ambient}")
        return f

    def expand(self, f) -> np.ndarray:
        """sum v_i^2 |x_i|^2 <f, y_i> y_i, equal to f for every f"""
        f = self._vector(f)
        norms = np.sum(self.vectors ** 2, axis=1)
        return self.duals.T @ (self.weights * norms * (self.duals @ f))

    def expand_from_measurements(self, measurements) -> np.ndarray:
        """sum v_i^2 c_i y_i from sensor measurements c_i = <f, x_i>

        Equals f whenever <f, z_i> = 0 for every perturbation z_i, in particular
        when every x_i is a multiple of a coordinate vector.
        """
        c = as_vector(measurements, 'measurements')
        if c.shape[0] != self.count:
            raise DimensionMismatchError(f"expected {self.count} measurements, got {c.shape[0]}")
        return self.duals.T @ (self.weights * c)

    def parseval_expand(self, f) -> np.ndarray:
        f = self._vector(f)
        return self.parseval_vectors.T @ (self.parseval_vectors @ f)

    def member_system(self, i: int) -> PffsSystem:
        """Rank-one pseudoframe realizing P_i

        The frame of W_i = span{x_i} is x_i / |x_i|^2, whose dual in W_i is x_i;
        adding z_i turns the analysis vector into y_i.
        """
        x = self.vectors[i]
        w = x / np.dot(x, x)
        return build_pffs(Subspace(x[:, None]), w[:, None], self.perturbations[i][:, None])


def _basis_rows(X: np.ndarray, tol: Tolerances) -> List[int]:
    """First N linearly independent vectors, in input order"""
    n = X.shape[1]
    chosen: List[int] = []
    for i in range(X.shape[0]):
        if numerical_rank(X[chosen + [i], :], tol) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == n:
                break
    return chosen


def _assign_diagonal(B: np.ndarray) -> List[int]:
    """Coordinate for each basis vector with nonzero entries, largest product first"""
    magnitude = np.abs(B)
    with np.errstate(divide='ignore'):
        cost = -np.log(magnitude)
    finite = np.isfinite(cost)
    big = (np.max(np.abs(cost[finite])) if finite.any() else 0.0) * B.shape[0] + 1e6
    cost[~finite] = big
    rows, cols = linear_sum_assignment(cost)
    if np.any(magnitude[rows, cols] == 0.0):
        raise NoValidPermutationError("no ordering of the basis vectors has a nonzero diagonal")
    assigned = [0] * B.shape[0]
    for r, c in zip(rows, cols):
        assigned[int(r)] = int(c)
    return assigned


def _perturbation(x: np.ndarray, j: int) -> np.ndarray:
    """z_i orthogonal to x_i with x_i / |x_i|^2 + z_i = e_j / x_j"""
    norm2 = float(np.dot(x, x))
    z = -x / norm2
    z[j] = (norm2 - x[j] ** 2) / (x[j] * norm2)
    return z


def parseval_from_frame(X, weights: str = 'shared', tol: Optional[Tolerances] = None) -> ParsevalConstruction:
    """Weights v_i and one-column projections P_i with sum v_i^2 P_i^T P_i = I

    ``X`` is M x N, one frame vector per row. ``weights='shared'`` gives
    v_i^2 = 1 / ((|J_k| + 1) |x_i / x_{ik}|^2) with k = j_i; ``weights='pooled'``
    gives v_i^2 = 1 / sum_{l : j_l = k} |x_l / x_{lk}|^2.
    """
    tol = get_tolerances(tol)
    if weights not in WEIGHT_SCHEMES:
        raise InputError(f"unknown weight scheme '{weights}', expected one of {', '.join(WEIGHT_SCHEMES)}")
    X = as_matrix(X, 'frame')
    m, n = X.shape
    if m < n:
        raise NotSpanningError(f"{m} vectors cannot span R^{n}")
    zero_rows = [i for i in range(m) if not np.any(X[i])]
    if zero_rows:
        raise ZeroVectorError(f"frame vectors {zero_rows} are zero")
    if numerical_rank(X, tol) < n:
        raise NotSpanningError(f"frame vectors do not span R^{n}")

    basis = _basis_rows(X, tol)
    assigned = _assign_diagonal(X[basis, :])
    ordered_basis = [0] * n
    for row, coord in zip(basis, assigned):
        ordered_basis[coord] = row
    permutation = ordered_basis + complement_indices(m, basis)
    vectors = X[permutation, :]

    # Ties in argmax go to the lowest coordinate
    pivots = list(range(n)) + [int(np.argmax(np.abs(vectors[i]))) for i in range(n, m)]

    lifted = np.array([vectors[i] / vectors[i, pivots[i]] for i in range(m)])
    r = np.sum(lifted ** 2, axis=1)
    counts = Counter(pivots)
    if weights == 'shared':
        v2 = np.array([1.0 / (counts[pivots[i]] * r[i]) for i in range(m)])
    else:
        totals = np.zeros(n)
        np.add.at(totals, pivots, r)
        v2 = np.array([1.0 / totals[pivots[i]] for i in range(m)])

    duals = np.zeros((m, n))
    duals[np.arange(m), pivots] = 1.0 / vectors[np.arange(m), pivots]
    perturbations = np.array([_perturbation(vectors[i], pivots[i]) for i in range(m)])
    parseval_vectors = np.zeros((m, n))
    parseval_vectors[np.arange(m), pivots] = np.sqrt(v2 * r)

    members = []
    for i in range(m):
        j = pivots[i]
        matrix = np.zeros((n, n))
        matrix[:, j] = lifted[i]
        W_i = Subspace(vectors[i][:, None])
        rest = complement_indices(n, [j])
        nullspace = coordinate_subspace(n, rest) if rest else None
        members.append(WeightedProjection(ObliqueProjection(matrix, W_i, nullspace, tol), float(np.sqrt(v2[i]))))

    logger.debug("parseval_from_frame", ambient=n, count=m, pivots=pivots, weights=weights)
    return ParsevalConstruction(
        vectors=vectors,
        permutation=permutation,
        pivots=pivots,
        weights=v2,
        duals=duals,
        perturbations=perturbations,
        parseval_vectors=parseval_vectors,
        frame=FusionFrame(n, tuple(members)),
    )
