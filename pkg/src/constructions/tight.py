"""
Tight families of projections onto one subspace

Canonical constructions on coordinate-aligned subspaces, carried to an arbitrary
subspace of the same dimension by an orthogonal U (U P U^T keeps idempotence and
U S U^T = lambda I when S = lambda I).
"""

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Tuple

import numpy as np

from src.config import Tolerances, get_tolerances
from src.errors import BadFactorizationError, DimensionMismatchError, DimensionTooSmallError, NotOrthogonalError
from src.fusion import FusionFrame
from src.linalg import (
    Subspace,
    as_matrix,
    coordinate_subspace,
    frozen,
    is_orthogonal_matrix,
    max_abs,
    orthogonal_complement,
    orthogonal_projector_matrix,
    orthonormal_basis,
    same_span,
    symmetric_eigendecomposition,
)
from src.logging_config import get_logger
from src.projections import ObliqueProjection, coordinate_lift_projection, transport

logger = get_logger('constructions.tight')


def minimum_member_count(n: int, k: int) -> int:
    """Fewest projections onto one k-dimensional subspace of R^n that can sum to lambda I"""
    if k < 1 or k > n:
        raise DimensionMismatchError(f"need 1 <= k <= N, got k={k}, N={n}")
    return math.ceil(n / k)


@dataclass(frozen=True, eq=False)
class TightFamily:
    """Projections onto one subspace W, all with weight one"""

    subspace: Subspace
    projections: Tuple[ObliqueProjection, ...]
    constant: Optional[float]
    achieved_spectrum: np.ndarray
    claimed_spectrum: Optional[np.ndarray] = None
    shared_fixed_subspace: Optional[Subspace] = None
    unitary: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'projections', tuple(self.projections))
        object.__setattr__(self, 'achieved_spectrum', frozen(self.achieved_spectrum))
        if self.claimed_spectrum is not None:
            object.__setattr__(self, 'claimed_spectrum', frozen(self.claimed_spectrum))
        if self.unitary is not None:
            object.__setattr__(self, 'unitary', frozen(self.unitary))

    @property
    def ambient(self) -> int:
        return self.subspace.ambient

    def __len__(self) -> int:
        return len(self.projections)

    def operator(self) -> np.ndarray:
        S = sum(P.matrix.T @ P.matrix for P in self.projections)
        return 0.5 * (S + S.T)

    def fusion_frame(self) -> FusionFrame:
        return FusionFrame.from_projections(self.projections)

    def is_tight(self) -> bool:
        return self.constant is not None

    def satisfies_count_bound(self) -> bool:
        return len(self) >= minimum_member_count(self.ambient, self.subspace.dim)

    def matches_claim(self, tol: Optional[Tolerances] = None) -> Optional[bool]:
        """Whether S = diag(claimed_spectrum); None when nothing was claimed"""
        if self.claimed_spectrum is None:
            return None
        tol = get_tolerances(tol)
        return max_abs(self.operator() - np.diag(self.claimed_spectrum)) <= tol.eq * max(1.0, max_abs(self.claimed_spectrum))


def _family(subspace: Subspace, projections: Sequence[ObliqueProjection], tol: Tolerances,
            **extra) -> TightFamily:
    S = sum(P.matrix.T @ P.matrix for P in projections)
    eigenvalues, _ = symmetric_eigendecomposition(0.5 * (S + S.T), tol)
    lower, upper = float(eigenvalues[0]), float(eigenvalues[-1])
    constant = float(np.mean(eigenvalues)) if lower > tol.eig and upper - lower <= tol.tight_rtol * upper else None
    return TightFamily(subspace, tuple(projections), constant, eigenvalues, **extra)


def transport_family(family: TightFamily, U, tol: Optional[Tolerances] = None) -> TightFamily:
    """Conjugate every member by the orthogonal matrix U"""
    tol = get_tolerances(tol)
    U = as_matrix(U, 'U')
    if not is_orthogonal_matrix(U, tol):
        raise NotOrthogonalError("transport matrix is not orthogonal")
    if U.shape[0] != family.ambient:
        raise DimensionMismatchError(f"U must be {family.ambient}x{family.ambient}, got {U.shape}")
    projections = [transport(P, U, tol) for P in family.projections]
    fixed = family.shared_fixed_subspace
    claimed = family.claimed_spectrum
    return _family(
        Subspace(U @ family.subspace.basis),
        projections,
        tol,
        # A claimed diagonal survives only permutation-like transports
        claimed_spectrum=None if claimed is None else np.diag(U @ np.diag(claimed) @ U.T),
        shared_fixed_subspace=None if fixed is None else Subspace(U @ fixed.basis),
        unitary=U if family.unitary is None else U @ family.unitary,
    )


def alignment(source: Subspace, target: Subspace, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Orthogonal U with U(source) = target, matching orthonormal bases and complements"""
    if source.ambient != target.ambient or source.dim != target.dim:
        raise DimensionMismatchError("subspaces differ in ambient space or dimension")
    n = source.ambient
    if source.dim == n or same_span(source, target, tol):
        return np.eye(n)
    Q_s = orthonormal_basis(source, tol)
    Q_t = orthonormal_basis(target, tol)
    C_s = orthogonal_complement(source, tol).basis
    C_t = orthogonal_complement(target, tol).basis
    return np.hstack([Q_t, C_t]) @ np.hstack([Q_s, C_s]).T


def _pair_basis(n: int, k: int) -> np.ndarray:
    d = n - k
    basis = np.zeros((n, k))
    for i in range(k):
        basis[i, i] = 1.0
        if i < d:
            basis[k + i, i] = 1.0
    return basis


def _signed_permutation(W: Subspace, n: int, k: int, tol: Tolerances) -> Optional[np.ndarray]:
    """Signed permutation U with U W_c = W, when one exists

    W_c is spanned by k - d unit coordinate vectors and d disjoint pairs
    e_i + e_{k+i}; its orthogonal projector has diagonal entries 1 and 1/2 and
    an off-diagonal +-1/2 joining the two coordinates of each pair.
    """
    d = n - k
    pi = orthogonal_projector_matrix(W, tol)
    diag = np.diag(pi)
    whole = [i for i in range(n) if abs(diag[i] - 1.0) <= tol.eq]
    halves = [i for i in range(n) if abs(diag[i] - 0.5) <= tol.eq]
    if len(whole) != k - d or len(halves) != 2 * d:
        return None

    pairs = []
    seen = set()
    for a in halves:
        if a in seen:
            continue
        partners = [b for b in halves if b != a and abs(abs(pi[a, b]) - 0.5) <= tol.eq]
        if len(partners) != 1 or partners[0] in seen:
            return None
        b = partners[0]
        seen.update((a, b))
        pairs.append((a, b, 1.0 if pi[a, b] > 0 else -1.0))

    U = np.zeros((n, n))
    for i, (a, b, sign) in enumerate(pairs):
        U[a, i] = 1.0
        U[b, k + i] = sign
    for i, c in zip(range(d, k), whole):
        U[c, i] = 1.0
    if not same_span(Subspace(U @ _pair_basis(n, k)), W, tol):
        return None
    return U


def tight_pair(W: Subspace, tol: Optional[Tolerances] = None) -> TightFamily:
    """Two projections onto W with P_1^T P_1 + P_2^T P_2 = 2I, for dim W >= N/2

    On W_c = span({e_i + e_{k+i}}_{i < N-k} + {e_i}_{N-k <= i < k}) P_1 runs along
    span{e_k..e_{N-1}} and P_2 along span{e_0..e_{N-k-1}}; both fix e_i for
    N-k <= i < k. A signed coordinate permutation carries W_c to W when one
    exists, keeping both Gram matrices diagonal; otherwise the bases are aligned.
    """
    tol = get_tolerances(tol)
    n, k = W.ambient, W.dim
    if 2 * k < n:
        raise DimensionTooSmallError(f"dim W = {k} is below N/2 = {n / 2}")
    d = n - k

    y_first = [np.eye(n)[:, k + i] if i < d else np.zeros(n) for i in range(k)]
    first_K = list(range(k))
    second_K = list(range(d, n))
    y_second = [np.eye(n)[:, i - k] if i >= k else np.zeros(n) for i in second_K]
    W_c, P_1 = coordinate_lift_projection(first_K, y_first, tol)
    _, P_2 = coordinate_lift_projection(second_K, y_second, tol)
    fixed = coordinate_subspace(n, range(d, k)) if d < k else None
    canonical = _family(W_c, [P_1, P_2], tol, shared_fixed_subspace=fixed, unitary=np.eye(n))

    U = _signed_permutation(W, n, k, tol)
    if U is None:
        U = alignment(W_c, W, tol)
    family = replace(transport_family(canonical, U, tol), subspace=W)
    logger.debug("tight_pair", ambient=n, rank=k, signed_permutation=bool(np.all(np.isin(U, (-1.0, 0.0, 1.0)))),
                 constant=family.constant)
    return family


def _chain_basis(n: int, k: int, lengths: Sequence[int]) -> np.ndarray:
    basis = np.zeros((n, k))
    for i, length in enumerate(lengths):
        for j in range(length):
            basis[j * k + i, i] = 1.0
    return basis


def _block_projection(basis: np.ndarray, K: Sequence[int], tol: Tolerances) -> ObliqueProjection:
    # Each chain meets K in exactly one coordinate, which is its forced row
    n = basis.shape[0]
    y = []
    for index in K:
        chain = int(np.flatnonzero(basis[index])[0])
        vector = basis[:, chain].copy()
        vector[index] = 0.0
        y.append(vector)
    return coordinate_lift_projection(K, y, tol)[1]


def tight_chain(k: int, L: int, n: Optional[int] = None, tol: Optional[Tolerances] = None) -> TightFamily:
    """L projections onto W_c = span{sum_j e_{jk+i}} summing to L I, for N = kL

    The j-th projection runs along the coordinates outside the j-th block of k.
    """
    tol = get_tolerances(tol)
    if k < 1 or L < 1:
        raise BadFactorizationError(f"need k >= 1 and L >= 1, got k={k}, L={L}")
    if n is not None and n != k * L:
        raise BadFactorizationError(f"N = {n} is not k * L = {k * L}")
    n = k * L
    basis = _chain_basis(n, k, [L] * k)
    projections = [_block_projection(basis, range(j * k, (j + 1) * k), tol) for j in range(L)]
    family = _family(Subspace(basis), projections, tol, unitary=np.eye(n))
    logger.debug("tight_chain", ambient=n, rank=k, members=L, constant=family.constant)
    return family


def tight_chain_general(W: Subspace, L: int, tol: Optional[Tolerances] = None) -> TightFamily:
    """tight_chain carried onto W by an orthogonal alignment"""
    tol = get_tolerances(tol)
    n, k = W.ambient, W.dim
    if L < 1 or k * L != n:
        raise BadFactorizationError(f"dim W * L = {k} * {L} does not equal N = {n}")
    canonical = tight_chain(k, L, n, tol)
    return replace(transport_family(canonical, alignment(canonical.subspace, W, tol), tol), subspace=W)


def residual_chain(k: int, L: int, M: int, tol: Optional[Tolerances] = None) -> TightFamily:
    """L + 1 coordinate-aligned projections onto a chain subspace of R^{kL+M}

    W is spanned by M chains of length L + 1 and k - M chains of length L. The
    first L projections run along the complements of the contiguous k-blocks;
    the last keeps the M trailing coordinates plus the short-chain coordinates
    of block L - 1. The achieved spectrum is computed, never assumed; the
    claimed one is L + 1 on the first N - M coordinates and L on the last M.
    """
    tol = get_tolerances(tol)
    if L < 1 or not 1 <= M < k:
        raise BadFactorizationError(f"need L >= 1 and 1 <= M < k, got k={k}, L={L}, M={M}")
    n = k * L + M
    basis = _chain_basis(n, k, [L + 1 if i < M else L for i in range(k)])
    blocks = [list(range(j * k, (j + 1) * k)) for j in range(L)]
    blocks.append(sorted([(L - 1) * k + i for i in range(M, k)] + [L * k + i for i in range(M)]))
    projections = [_block_projection(basis, K, tol) for K in blocks]
    claimed = np.array([L + 1.0] * (n - M) + [float(L)] * M)
    family = _family(Subspace(basis), projections, tol, claimed_spectrum=claimed, unitary=np.eye(n))
    logger.debug("residual_chain", ambient=n, rank=k, members=L + 1,
                 spectrum=family.achieved_spectrum.tolist(), matches_claim=family.matches_claim(tol))
    return family
