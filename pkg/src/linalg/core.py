"""
Dense real linear algebra substrate
Orthonormalization, rank and null-space computation, symmetric eigendecomposition
and the subspace arithmetic every other module builds on
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from src.config import Tolerances, get_tolerances
from src.errors import (
    DimensionMismatchError,
    FullSpaceError,
    NonFiniteError,
    NotSymmetricError,
    RankDeficientError,
    SingularError,
)


def as_matrix(values, name: str = 'matrix') -> np.ndarray:
    """Private float64 copy of a 2-D array, rejecting NaN/Inf"""
    arr = np.array(values, dtype=float)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"{name} must be two-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} contains non-finite entries")
    return arr


def as_vector(values, name: str = 'vector') -> np.ndarray:
    """Private float64 copy of a 1-D array, rejecting NaN/Inf"""
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatchError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} contains non-finite entries")
    return arr


def frozen(arr: np.ndarray) -> np.ndarray:
    """Read-only copy, so values held by immutable types never alias caller storage"""
    out = np.array(arr, dtype=float, copy=True)
    out.flags.writeable = False
    return out


def max_abs(M: np.ndarray) -> float:
    return float(np.max(np.abs(M))) if np.size(M) else 0.0


def pivoted_qr(M: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Economic QR with column pivoting; ties go to the lowest column index"""
    return scipy.linalg.qr(M, mode='economic', pivoting=True)


def numerical_rank(M: np.ndarray, tol: Optional[Tolerances] = None) -> int:
    """Rank from the pivoted R diagonal, relative to the largest pivot"""
    tol = get_tolerances(tol)
    if np.size(M) == 0:
        return 0
    _, R, _ = pivoted_qr(M)
    diag = np.abs(np.diag(R))
    if diag.size == 0 or diag[0] == 0.0:
        return 0
    return int(np.sum(diag > tol.rank * diag[0]))


@dataclass(frozen=True, eq=False)
class Subspace:
    """A k-dimensional subspace of R^N given by an N x k basis (columns)

    ``tol`` sets the rank threshold the basis is checked against.
    """

    basis: np.ndarray
    tol: Optional[Tolerances] = field(default=None, repr=False)

    def __post_init__(self):
        basis = as_matrix(self.basis, 'basis')
        n, k = basis.shape
        if k < 1 or k > n:
            raise DimensionMismatchError(f"basis must have 1 <= k <= N columns, got {k} for N={n}")
        if numerical_rank(basis, self.tol) < k:
            raise RankDeficientError(f"basis columns are linearly dependent ({k} columns)")
        object.__setattr__(self, 'basis', frozen(basis))

    @property
    def ambient(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def spanned_by(cls, columns, tol: Optional[Tolerances] = None) -> 'Subspace':
        """Subspace spanned by possibly dependent columns"""
        space = column_space(as_matrix(columns, 'columns'), tol)
        if space is None:
            raise RankDeficientError("columns span only the zero subspace")
        return space

    def __repr__(self) -> str:
        return f"<Subspace dim={self.dim} in R^{self.ambient}>"


def orthonormalize(S: Subspace, tol: Optional[Tolerances] = None) -> Subspace:
    """Canonical orthonormal basis: unpivoted QR with a nonnegative R diagonal"""
    tol = get_tolerances(tol)
    if numerical_rank(S.basis, tol) < S.dim:
        raise RankDeficientError(f"basis of dimension {S.dim} is rank deficient")
    Q, R = scipy.linalg.qr(S.basis, mode='economic')
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Subspace(Q * signs)


def orthonormal_basis(S: Subspace, tol: Optional[Tolerances] = None) -> np.ndarray:
    return np.array(orthonormalize(S, tol).basis)


def orthogonal_complement(S: Subspace, tol: Optional[Tolerances] = None) -> Subspace:
    """Orthonormal basis of the (N - k)-dimensional orthogonal complement"""
    if S.dim == S.ambient:
        raise FullSpaceError(f"subspace fills R^{S.ambient}; complement is trivial")
    Q = orthonormal_basis(S, tol)
    full_q, _ = scipy.linalg.qr(Q, mode='full')
    return Subspace(full_q[:, S.dim:])


def column_space(M: np.ndarray, tol: Optional[Tolerances] = None) -> Optional[Subspace]:
    """Orthonormal basis of range(M), or None for the zero map"""
    tol = get_tolerances(tol)
    if np.size(M) == 0:
        return None
    Q, R, _ = pivoted_qr(M)
    diag = np.abs(np.diag(R))
    if diag.size == 0 or diag[0] == 0.0:
        return None
    r = int(np.sum(diag > tol.rank * diag[0]))
    return Subspace(Q[:, :r])


def null_space(M: np.ndarray, tol: Optional[Tolerances] = None) -> Optional[Subspace]:
    """Orthonormal basis of ker(M), or None when M is injective"""
    M = as_matrix(M)
    n = M.shape[1]
    rows = column_space(M.T, tol)
    if rows is None:
        return Subspace(np.eye(n))
    if rows.dim == n:
        return None
    return orthogonal_complement(rows, tol)


def symmetric_eigendecomposition(M, tol: Optional[Tolerances] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvectors (columns) of a symmetric matrix"""
    tol = get_tolerances(tol)
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(f"matrix must be square, got {M.shape}")
    scale = max(1.0, max_abs(M))
    if max_abs(M - M.T) > tol.eq * scale:
        raise NotSymmetricError("matrix is not symmetric within tolerance")
    eigenvalues, eigenvectors = scipy.linalg.eigh(0.5 * (M + M.T))
    return eigenvalues, eigenvectors


def solve_linear(A, B, tol: Optional[Tolerances] = None) -> np.ndarray:
    """X with A X = B for square, well-conditioned A"""
    A = as_matrix(A, 'A')
    B = np.array(B, dtype=float)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"A must be square, got {A.shape}")
    if B.shape[0] != A.shape[0]:
        raise DimensionMismatchError(f"B has {B.shape[0]} rows, A has {A.shape[0]}")
    if numerical_rank(A, tol) < A.shape[0]:
        raise SingularError("A is singular at the rank tolerance")
    return scipy.linalg.solve(A, B)


def orthogonal_projector_matrix(S: Subspace, tol: Optional[Tolerances] = None) -> np.ndarray:
    Q = orthonormal_basis(S, tol)
    return Q @ Q.T


def contains(S: Subspace, v, tol: Optional[Tolerances] = None) -> bool:
    """True when v lies in S within the equality tolerance"""
    tol = get_tolerances(tol)
    v = np.asarray(v, dtype=float)
    Q = orthonormal_basis(S, tol)
    residual = v - Q @ (Q.T @ v)
    return float(np.linalg.norm(residual)) <= tol.eq * max(1.0, float(np.linalg.norm(v)))


def same_span(A: Subspace, B: Subspace, tol: Optional[Tolerances] = None) -> bool:
    """Span equality: equal dimension and every basis vector of B inside A"""
    if A.ambient != B.ambient or A.dim != B.dim:
        return False
    QA = orthonormal_basis(A, tol)
    QB = orthonormal_basis(B, tol)
    tol = get_tolerances(tol)
    return max_abs(QB - QA @ (QA.T @ QB)) <= tol.eq


def is_complementary(W: Subspace, V: Subspace, tol: Optional[Tolerances] = None) -> bool:
    """W + V is a direct sum filling the ambient space"""
    if W.ambient != V.ambient or W.dim + V.dim != W.ambient:
        return False
    stacked = np.hstack([orthonormal_basis(W, tol), orthonormal_basis(V, tol)])
    return numerical_rank(stacked, tol) == W.ambient


def coordinate_subspace(n: int, indices: Iterable[int]) -> Subspace:
    """span{e_i : i in indices} in R^n (0-based)"""
    idx = sorted(set(int(i) for i in indices))
    if not idx or idx[0] < 0 or idx[-1] >= n:
        raise DimensionMismatchError(f"indices {idx} out of range for R^{n}")
    return Subspace(np.eye(n)[:, idx])


def complement_indices(n: int, indices: Sequence[int]) -> list:
    chosen = set(int(i) for i in indices)
    return [j for j in range(n) if j not in chosen]


def is_orthogonal_matrix(U, tol: Optional[Tolerances] = None) -> bool:
    tol = get_tolerances(tol)
    U = np.asarray(U, dtype=float)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        return False
    return max_abs(U.T @ U - np.eye(U.shape[0])) <= tol.eq
