"""
Oblique (non-orthogonal) projections
A projection is fixed by its range and its null space; the matrix is kept dense
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from src.config import Tolerances, get_tolerances
from src.errors import DimensionMismatchError, NotAProjectionError, NotComplementaryError
from src.linalg import (
    Subspace,
    as_matrix,
    column_space,
    frozen,
    is_complementary,
    max_abs,
    null_space,
    orthogonal_complement,
    orthonormal_basis,
    solve_linear,
)
from src.logging_config import get_logger

logger = get_logger('projections.oblique')


def _residual_scale(matrix: np.ndarray) -> float:
    # Rounding in P @ P grows with the square of the entries
    return max(1.0, max_abs(matrix)) ** 2


@dataclass(frozen=True, eq=False)
class ObliqueProjection:
    """Idempotent N x N matrix with its range W and null space N(P)

    ``nullspace`` is None only when the range is the whole space (P = I).
    """

    matrix: np.ndarray
    range: Subspace
    nullspace: Optional[Subspace]
    tol: Optional[Tolerances] = field(default=None, repr=False)

    def __post_init__(self):
        tol = get_tolerances(self.tol)
        matrix = as_matrix(self.matrix, 'projection matrix')
        n = matrix.shape[0]
        if matrix.shape != (n, n):
            raise DimensionMismatchError(f"projection matrix must be square, got {matrix.shape}")
        if self.range.ambient != n:
            raise DimensionMismatchError("range lives in a different ambient space")
        null_dim = 0
        if self.nullspace is not None:
            if self.nullspace.ambient != n:
                raise DimensionMismatchError("null space lives in a different ambient space")
            null_dim = self.nullspace.dim
        if self.range.dim + null_dim != n:
            raise DimensionMismatchError(
                f"dim(range) + dim(nullspace) = {self.range.dim + null_dim}, expected {n}")

        scale = _residual_scale(matrix)
        residual = max_abs(matrix @ matrix - matrix)
        if residual > tol.eq * scale:
            raise NotAProjectionError(f"matrix is not idempotent (residual {residual:.3e})", residual=residual)
        W = self.range.basis
        if max_abs(matrix @ W - W) > tol.eq * scale * max(1.0, max_abs(W)):
            raise NotAProjectionError("matrix does not fix its range")
        if self.nullspace is not None:
            V = self.nullspace.basis
            if max_abs(matrix @ V) > tol.eq * scale * max(1.0, max_abs(V)):
                raise NotAProjectionError("matrix does not annihilate its null space")
        object.__setattr__(self, 'matrix', frozen(matrix))

    @property
    def ambient(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return self.range.dim

    def apply(self, f) -> np.ndarray:
        return self.matrix @ np.asarray(f, dtype=float)

    def idempotency_residual(self) -> float:
        return max_abs(self.matrix @ self.matrix - self.matrix)

    @classmethod
    def from_matrix(cls, matrix, tol: Optional[Tolerances] = None, index: Optional[int] = None) -> 'ObliqueProjection':
        """Recover range and null space from an explicit idempotent matrix"""
        tol = get_tolerances(tol)
        matrix = as_matrix(matrix, 'projection matrix')
        if matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError(f"projection matrix must be square, got {matrix.shape}")
        residual = max_abs(matrix @ matrix - matrix)
        if residual > tol.eq * _residual_scale(matrix):
            label = f"matrix {index}" if index is not None else "matrix"
            raise NotAProjectionError(f"{label} is not idempotent (residual {residual:.3e})",
                                      index=index, residual=residual)
        range_space = column_space(matrix, tol)
        if range_space is None:
            raise NotAProjectionError("the zero matrix projects onto no subspace", index=index, residual=residual)
        return cls(matrix, range_space, null_space(matrix, tol), tol)


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """P^T P of a projection: symmetric positive semidefinite"""

    matrix: np.ndarray
    source: ObliqueProjection

    def __post_init__(self):
        object.__setattr__(self, 'matrix', frozen(self.matrix))

    def diagonal(self) -> np.ndarray:
        return np.diag(self.matrix).copy()

    def nnz(self, tol: Optional[Tolerances] = None) -> int:
        tol = get_tolerances(tol)
        return int(np.sum(np.abs(self.matrix) > tol.eq))

    def is_diagonal(self, tol: Optional[Tolerances] = None) -> bool:
        tol = get_tolerances(tol)
        off = self.matrix - np.diag(np.diag(self.matrix))
        return max_abs(off) <= tol.eq

    def support(self, tol: Optional[Tolerances] = None) -> list:
        """Indices of rows carrying any entry above tolerance"""
        tol = get_tolerances(tol)
        return [int(i) for i in np.flatnonzero(np.max(np.abs(self.matrix), axis=1) > tol.eq)]


def oblique(range_space: Subspace, nullspace: Optional[Subspace],
            tol: Optional[Tolerances] = None) -> ObliqueProjection:
    """Projection onto ``range_space`` along ``nullspace``

    With X an orthonormal basis of the range and Y one of nullspace^perp the
    projection is X (Y^T X)^{-1} Y^T.
    """
    tol = get_tolerances(tol)
    n = range_space.ambient
    if nullspace is None:
        if range_space.dim != n:
            raise DimensionMismatchError("a trivial null space requires the range to fill the space")
        return ObliqueProjection(np.eye(n), range_space, None, tol)
    if nullspace.ambient != n or range_space.dim + nullspace.dim != n:
        raise DimensionMismatchError(
            f"need dim(range) + dim(nullspace) = {n}, got {range_space.dim} + {nullspace.dim}")
    if not is_complementary(range_space, nullspace, tol):
        raise NotComplementaryError("range and null space intersect nontrivially")

    X = orthonormal_basis(range_space, tol)
    Y = orthonormal_basis(orthogonal_complement(nullspace, tol), tol)
    matrix = X @ solve_linear(Y.T @ X, Y.T, tol)
    logger.debug("oblique_projection", ambient=n, rank=range_space.dim)
    return ObliqueProjection(matrix, range_space, nullspace, tol)


def orthogonal_projector(W: Subspace, tol: Optional[Tolerances] = None) -> ObliqueProjection:
    """The orthogonal projection pi_W"""
    Q = orthonormal_basis(W, tol)
    complement = orthogonal_complement(W, tol) if W.dim < W.ambient else None
    return ObliqueProjection(Q @ Q.T, W, complement, tol)


def gram(P: ObliqueProjection) -> GramMatrix:
    G = P.matrix.T @ P.matrix
    return GramMatrix(0.5 * (G + G.T), P)


def eigen_structure(P: ObliqueProjection, tol: Optional[Tolerances] = None) -> Tuple[Subspace, Optional[Subspace]]:
    """Eigenvalue-1 and eigenvalue-0 eigenspaces, read off the matrix itself"""
    ones = column_space(P.matrix, tol)
    zeros = null_space(P.matrix, tol)
    return ones, zeros


def is_orthogonal(P: ObliqueProjection, tol: Optional[Tolerances] = None) -> bool:
    """Symmetric exactly when the null space is the orthogonal complement of the range"""
    tol = get_tolerances(tol)
    return max_abs(P.matrix - P.matrix.T) <= tol.eq * max(1.0, max_abs(P.matrix))


def adjoint(P: ObliqueProjection, tol: Optional[Tolerances] = None) -> ObliqueProjection:
    """P^T projects onto N(P)^perp along range(P)^perp"""
    n = P.ambient
    new_range = orthogonal_complement(P.nullspace, tol) if P.nullspace is not None else Subspace(np.eye(n))
    new_null = orthogonal_complement(P.range, tol) if P.range.dim < n else None
    return ObliqueProjection(P.matrix.T, new_range, new_null, tol)


def transport(P: ObliqueProjection, U, tol: Optional[Tolerances] = None) -> ObliqueProjection:
    """U P U^T for orthogonal U: a projection onto U.range along U.nullspace"""
    U = as_matrix(U, 'U')
    if U.shape != (P.ambient, P.ambient):
        raise DimensionMismatchError(f"U must be {P.ambient}x{P.ambient}, got {U.shape}")
    new_null = Subspace(U @ P.nullspace.basis) if P.nullspace is not None else None
    return ObliqueProjection(U @ P.matrix @ U.T, Subspace(U @ P.range.basis), new_null, tol)
