"""
Projections with a prescribed zero pattern

block_sparse_projection confines P^T P to a k x k principal block,
triangular_projection orders that block so the matrix is lower triangular, and
coordinate_lift_projection builds P e_i = e_i + y_i whose Gram matrix is diagonal.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config import Tolerances, get_tolerances
from src.errors import DimensionMismatchError, NotOrthogonalError, SupportViolationError
from src.linalg import (
    Subspace,
    as_vector,
    complement_indices,
    coordinate_subspace,
    max_abs,
    orthonormal_basis,
    pivoted_qr,
    solve_linear,
)
from src.logging_config import get_logger
from src.projections.oblique import ObliqueProjection

logger = get_logger('projections.sparse')


def _nullspace_off(n: int, K: Sequence[int]) -> Optional[Subspace]:
    rest = complement_indices(n, K)
    return coordinate_subspace(n, rest) if rest else None


def select_pivot_rows(W: Subspace, tol: Optional[Tolerances] = None) -> List[int]:
    """k coordinates on which pi_K restricted to W is invertible

    Column-pivoted QR of Q^T (Q orthonormal for W) picks the rows of Q with the
    largest remaining mass; LAPACK resolves ties to the lowest index.
    """
    Q = orthonormal_basis(W, tol)
    _, _, piv = pivoted_qr(Q.T)
    return sorted(int(i) for i in piv[:W.dim])


def _lifted_basis(W: Subspace, K: Sequence[int], tol: Optional[Tolerances]) -> np.ndarray:
    # B = Q (Q_K)^{-1}: basis of W whose rows on K are the identity
    Q = orthonormal_basis(W, tol)
    return solve_linear(Q[K, :].T, Q.T, tol).T


def block_sparse_projection(W: Subspace, tol: Optional[Tolerances] = None) -> Tuple[List[int], ObliqueProjection]:
    """Projection onto W whose Gram matrix vanishes outside K x K

    P = (pi_K|_W)^{-1} pi_K: the columns outside K are zero, so P^T P is supported
    on the principal block K.
    """
    tol = get_tolerances(tol)
    n = W.ambient
    K = select_pivot_rows(W, tol)
    matrix = np.zeros((n, n))
    matrix[:, K] = _lifted_basis(W, K, tol)
    logger.debug("block_sparse_projection", ambient=n, rank=W.dim, K=K)
    return K, ObliqueProjection(matrix, W, _nullspace_off(n, K), tol)


def triangular_projection(W: Subspace, tol: Optional[Tolerances] = None) -> Tuple[ObliqueProjection, List[int]]:
    """Projection onto W that is lower triangular after reordering K first

    Returns the projection and the order (K followed by its complement) in
    which it is triangular.
    """
    tol = get_tolerances(tol)
    n = W.ambient
    K, P = block_sparse_projection(W, tol)
    # X X_K^{-1} for any basis X of W is the lifted basis B with B_K = I, so P is
    # [[I, 0], [B_rest, 0]] in this order
    order = list(K) + complement_indices(n, K)
    logger.debug("triangular_projection", ambient=n, rank=W.dim, order=order)
    return P, order


def is_lower_triangular(matrix, order: Sequence[int], tol: Optional[Tolerances] = None) -> bool:
    """Entries above the diagonal vanish once rows and columns follow ``order``"""
    tol = get_tolerances(tol)
    permuted = np.asarray(matrix)[np.ix_(order, order)]
    return max_abs(np.triu(permuted, k=1)) <= tol.eq


def coordinate_lift_projection(K: Sequence[int], y: Sequence, tol: Optional[Tolerances] = None) -> Tuple[Subspace, ObliqueProjection]:
    """Projection with P e_i = e_i + y_i on K and P e_j = 0 off K

    Each y_i must avoid the coordinates in K and the y_i must be pairwise
    orthogonal; then P^T P = diag(1 + |y_i|^2) on K and zero elsewhere.
    """
    tol = get_tolerances(tol)
    K = [int(i) for i in K]
    if not K:
        raise DimensionMismatchError("index set K must not be empty")
    if len(set(K)) != len(K):
        raise DimensionMismatchError(f"index set K has repeated entries: {K}")
    if len(y) != len(K):
        raise DimensionMismatchError(f"expected {len(K)} perturbation vectors, got {len(y)}")
    vectors = [as_vector(v, f'y[{j}]') for j, v in enumerate(y)]
    n = vectors[0].shape[0]
    if any(v.shape[0] != n for v in vectors):
        raise DimensionMismatchError("perturbation vectors have different lengths")
    if min(K) < 0 or max(K) >= n:
        raise DimensionMismatchError(f"indices {K} out of range for R^{n}")

    Y = np.column_stack(vectors)
    scale = max(1.0, max_abs(Y))
    if max_abs(Y[K, :]) > tol.eq * scale:
        bad = [K[j] for j in range(len(K)) if max_abs(Y[K, j]) > tol.eq * scale]
        raise SupportViolationError(f"perturbations for indices {bad} have mass on K")
    inner = Y.T @ Y
    if max_abs(inner - np.diag(np.diag(inner))) > tol.eq * scale ** 2:
        raise NotOrthogonalError("perturbation vectors are not pairwise orthogonal")

    Y[K, :] = 0.0
    columns = np.eye(n)[:, K] + Y
    matrix = np.zeros((n, n))
    matrix[:, K] = columns
    W = Subspace(columns / np.linalg.norm(columns, axis=0))
    return W, ObliqueProjection(matrix, W, _nullspace_off(n, K), tol)
