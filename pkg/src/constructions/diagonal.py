"""
Diagonal Gram matrices

Exhaustive search for a coordinate set K whose forced basis of W is orthogonal,
the count of standard basis vectors inside W, and projections with a prescribed
diagonal P^T P.
"""

from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config import NumericsConfig, Tolerances, get_tolerances
from src.errors import BadEntryError, DimensionMismatchError, InfeasibleEntriesError, TooLargeError
from src.linalg import (
    Subspace,
    as_vector,
    complement_indices,
    contains,
    coordinate_subspace,
    max_abs,
    numerical_rank,
    orthonormal_basis,
    solve_linear,
)
from src.logging_config import get_logger
from src.projections import ObliqueProjection, coordinate_lift_projection

logger = get_logger('constructions.diagonal')


def forced_basis(Q: np.ndarray, K: Sequence[int], tol: Optional[Tolerances] = None) -> Optional[np.ndarray]:
    """Basis x_i (i in K) of W with x_i(j) = delta_ij on K, or None if pi_K|_W is singular"""
    Q_K = Q[list(K), :]
    if numerical_rank(Q_K, tol) < len(K):
        return None
    return solve_linear(Q_K.T, Q.T, tol).T


def diagonal_gram_search(W: Subspace, tol: Optional[Tolerances] = None,
                         max_dim: Optional[int] = None) -> Optional[Tuple[List[int], ObliqueProjection]]:
    """First K (lexicographic) whose forced basis is pairwise orthogonal

    The projection with P e_i = x_i on K and P e_j = 0 off K then has the
    diagonal Gram matrix diag(|x_i|^2). Returns None when no K works.
    """
    tol = get_tolerances(tol)
    limit = NumericsConfig.SEARCH_MAX_DIM if max_dim is None else max_dim
    n, k = W.ambient, W.dim
    if n > limit:
        raise TooLargeError(f"exhaustive search is limited to N <= {limit}, got N = {n}")

    Q = orthonormal_basis(W, tol)
    examined = 0
    for K in combinations(range(n), k):
        examined += 1
        B = forced_basis(Q, K, tol)
        if B is None:
            continue
        inner = B.T @ B
        scale = max(1.0, max_abs(inner))
        if max_abs(inner - np.diag(np.diag(inner))) > tol.eq * scale:
            continue
        matrix = np.zeros((n, n))
        matrix[:, list(K)] = B
        rest = complement_indices(n, K)
        nullspace = coordinate_subspace(n, rest) if rest else None
        logger.debug("diagonal_gram_found", K=list(K), examined=examined)
        return list(K), ObliqueProjection(matrix, W, nullspace, tol)

    logger.debug("diagonal_gram_infeasible", ambient=n, rank=k, examined=examined)
    return None


def check_dimension_restriction(W: Subspace, result_K: Sequence[int], tol: Optional[Tolerances] = None) -> int:
    """Number of standard basis vectors lying in W

    When a diagonal Gram projection exists and dim W = k > N/2 this is at least 2k - N.
    """
    n, k = W.ambient, W.dim
    if len(result_K) != k:
        raise DimensionMismatchError(f"K has {len(result_K)} indices, W has dimension {k}")
    identity = np.eye(n)
    count = sum(1 for i in range(n) if contains(W, identity[:, i], tol))
    if 2 * k > n and count < 2 * k - n:
        logger.warning("dimension_restriction_violated", count=count, bound=2 * k - n, K=list(result_K))
    return count


def prescribed_diagonal(n: int, K: Sequence[int], a: Sequence[float], adjustable: Optional[Sequence[int]] = None,
                        tol: Optional[Tolerances] = None) -> Tuple[Subspace, ObliqueProjection]:
    """Projection whose Gram matrix is diag(a_i) on K and zero elsewhere

    For 2k <= N every entry is honored. For 2k > N only N - k entries, those
    indexed by ``adjustable`` (chosen automatically when omitted), may exceed one.
    """
    tol = get_tolerances(tol)
    K = [int(i) for i in K]
    a = as_vector(a, 'a')
    k = len(K)
    if k == 0 or a.shape[0] != k:
        raise DimensionMismatchError(f"need one entry per index, got {a.shape[0]} entries for {k} indices")
    if len(set(K)) != k or min(K) < 0 or max(K) >= n:
        raise DimensionMismatchError(f"K = {K} is not a set of indices in range for R^{n}")
    low = [K[j] for j in range(k) if a[j] < 1.0 - tol.eq]
    if low:
        raise BadEntryError(f"diagonal entries below one at indices {low}")
    a = np.maximum(a, 1.0)

    free = complement_indices(n, K)
    if 2 * k <= n:
        carriers = {K[j]: free[j] for j in range(k)}
    else:
        carriers = dict(zip(_adjustable_set(n, K, a, adjustable, tol), free))

    y = []
    for j, index in enumerate(K):
        vector = np.zeros(n)
        if index in carriers:
            vector[carriers[index]] = np.sqrt(a[j] - 1.0)
        y.append(vector)
    W, P = coordinate_lift_projection(K, y, tol)
    logger.debug("prescribed_diagonal", ambient=n, K=K, carriers=carriers)
    return W, P


def _adjustable_set(n: int, K: List[int], a: np.ndarray, adjustable: Optional[Sequence[int]],
                    tol: Tolerances) -> List[int]:
    size = n - len(K)
    above = [K[j] for j in range(len(K)) if a[j] > 1.0 + tol.eq]
    if adjustable is None:
        if len(above) > size:
            raise InfeasibleEntriesError(
                f"{len(above)} entries exceed one but only N - k = {size} can when 2k > N")
        rest = [i for i in K if i not in above]
        return sorted(above + rest[:size - len(above)])

    chosen = sorted(int(i) for i in adjustable)
    if len(chosen) != size or len(set(chosen)) != size or not set(chosen) <= set(K):
        raise DimensionMismatchError(f"adjustable set must be {size} distinct indices from K, got {chosen}")
    stuck = [i for i in above if i not in chosen]
    if stuck:
        raise InfeasibleEntriesError(f"entries at {stuck} exceed one outside the adjustable set")
    return chosen
