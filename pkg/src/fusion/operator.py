"""
Fusion frame operator
Weighted families {P_i, v_i} sharing one ambient space, S = sum v_i^2 P_i^T P_i,
its frame bounds, the analysis/synthesis pair and reconstruction through S^{-1}
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config import Tolerances, get_tolerances
from src.errors import (
    DimensionMismatchError,
    InvalidWeightError,
    NotAFrameError,
    StrategyError,
)
from src.linalg import Subspace, as_vector, orthogonal_projector_matrix, symmetric_eigendecomposition
from src.logging_config import get_logger
from src.projections import (
    ObliqueProjection,
    block_sparse_projection,
    oblique,
    orthogonal_projector,
    triangular_projection,
)

logger = get_logger('fusion.operator')

STRATEGIES = ('orthogonal', 'block-sparse', 'triangular', 'oblique')


@dataclass(frozen=True)
class WeightedProjection:
    """One member P_i of a fusion frame with its positive weight v_i"""

    projection: ObliqueProjection
    weight: float = 1.0

    def __post_init__(self):
        weight = float(self.weight)
        if not math.isfinite(weight) or weight <= 0:
            raise InvalidWeightError(f"weights must be positive, got {self.weight}")
        object.__setattr__(self, 'weight', weight)

    @property
    def gram_term(self) -> np.ndarray:
        P = self.projection.matrix
        return self.weight ** 2 * (P.T @ P)


@dataclass(frozen=True)
class FusionFrame:
    ambient: int
    members: Tuple[WeightedProjection, ...]

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise DimensionMismatchError("a fusion frame needs at least one member")
        for i, member in enumerate(members):
            if member.projection.ambient != self.ambient:
                raise DimensionMismatchError(
                    f"member {i} acts on R^{member.projection.ambient}, frame is R^{self.ambient}")
        object.__setattr__(self, 'members', members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def weights(self) -> List[float]:
        return [m.weight for m in self.members]

    @property
    def projections(self) -> List[ObliqueProjection]:
        return [m.projection for m in self.members]

    @classmethod
    def from_projections(cls, projections: Sequence[ObliqueProjection],
                         weights: Optional[Sequence[float]] = None) -> 'FusionFrame':
        projections = list(projections)
        if not projections:
            raise DimensionMismatchError("a fusion frame needs at least one member")
        if weights is None:
            weights = [1.0] * len(projections)
        if len(weights) != len(projections):
            raise DimensionMismatchError(f"{len(projections)} projections but {len(weights)} weights")
        members = tuple(WeightedProjection(P, w) for P, w in zip(projections, weights))
        return cls(projections[0].ambient, members)


def _project(W: Subspace, strategy: str, nullspace: Optional[Subspace], index: int,
             tol: Tolerances) -> ObliqueProjection:
    if strategy == 'orthogonal':
        return orthogonal_projector(W, tol)
    if strategy == 'block-sparse':
        return block_sparse_projection(W, tol)[1]
    if strategy == 'triangular':
        return triangular_projection(W, tol)[0]
    if nullspace is None and W.dim < W.ambient:
        raise StrategyError(f"strategy 'oblique' needs a null space for subspace {index}")
    return oblique(W, nullspace, tol)


def build_fusion_frame(subspaces: Sequence[Subspace], weights: Optional[Sequence[float]] = None,
                       strategy: str = 'orthogonal', nullspaces: Optional[Sequence[Optional[Subspace]]] = None,
                       tol: Optional[Tolerances] = None) -> FusionFrame:
    """One projection per subspace, chosen by ``strategy``"""
    tol = get_tolerances(tol)
    if strategy not in STRATEGIES:
        raise StrategyError(f"unknown strategy '{strategy}', expected one of {', '.join(STRATEGIES)}")
    subspaces = list(subspaces)
    if not subspaces:
        raise DimensionMismatchError("no subspaces given")
    if nullspaces is None:
        nullspaces = [None] * len(subspaces)
    if len(nullspaces) != len(subspaces):
        raise DimensionMismatchError(f"{len(subspaces)} subspaces but {len(nullspaces)} null spaces")

    projections = [_project(W, strategy, V, i, tol) for i, (W, V) in enumerate(zip(subspaces, nullspaces))]
    logger.debug("fusion_frame_built", members=len(projections), strategy=strategy)
    return FusionFrame.from_projections(projections, weights)


def frame_operator(F: FusionFrame) -> np.ndarray:
    """S = sum v_i^2 P_i^T P_i"""
    S = np.zeros((F.ambient, F.ambient))
    for member in F.members:
        S += member.gram_term
    return 0.5 * (S + S.T)


def frame_bounds(S, tol: Optional[Tolerances] = None) -> Tuple[float, float]:
    """Optimal bounds C, D: the extreme eigenvalues of S"""
    eigenvalues, _ = symmetric_eigendecomposition(S, tol)
    return float(eigenvalues[0]), float(eigenvalues[-1])


def _vector(F: FusionFrame, f, name: str = 'f') -> np.ndarray:
    f = as_vector(f, name)
    if f.shape[0] != F.ambient:
        raise DimensionMismatchError(f"{name} has length {f.shape[0]}, frame acts on R^{F.ambient}")
    return f


def analysis(F: FusionFrame, f) -> List[np.ndarray]:
    f = _vector(F, f)
    return [m.weight * (m.projection.matrix @ f) for m in F.members]


def synthesis(F: FusionFrame, parts: Sequence) -> np.ndarray:
    """sum v_i P_i^T f_i, the adjoint of analysis"""
    if len(parts) != len(F):
        raise DimensionMismatchError(f"expected {len(F)} parts, got {len(parts)}")
    out = np.zeros(F.ambient)
    for i, (m, part) in enumerate(zip(F.members, parts)):
        out += m.weight * (m.projection.matrix.T @ _vector(F, part, f'parts[{i}]'))
    return out


def energy(F: FusionFrame, f) -> float:
    """sum v_i^2 |P_i f|^2, bracketed by C|f|^2 and D|f|^2"""
    f = _vector(F, f)
    return float(sum(m.weight ** 2 * np.dot(m.projection.matrix @ f, m.projection.matrix @ f) for m in F.members))


def reconstruct(F: FusionFrame, f, tol: Optional[Tolerances] = None) -> np.ndarray:
    """S^{-1} S f via the symmetric eigendecomposition of S"""
    tol = get_tolerances(tol)
    f = _vector(F, f)
    eigenvalues, V = symmetric_eigendecomposition(frame_operator(F), tol)
    if eigenvalues[0] <= tol.eig:
        raise NotAFrameError(f"lower frame bound {eigenvalues[0]:.3e} is not above {tol.eig:.1e}")
    coefficients = synthesis(F, analysis(F, f))
    return V @ ((V.T @ coefficients) / eigenvalues)


def classical_frame_operator(subspaces: Sequence[Subspace], weights: Optional[Sequence[float]] = None,
                             tol: Optional[Tolerances] = None) -> np.ndarray:
    """sum v_i^2 pi_i with orthogonal projectors, for comparison"""
    subspaces = list(subspaces)
    if not subspaces:
        raise DimensionMismatchError("no subspaces given")
    if weights is None:
        weights = [1.0] * len(subspaces)
    if len(weights) != len(subspaces):
        raise DimensionMismatchError(f"{len(subspaces)} subspaces but {len(weights)} weights")
    n = subspaces[0].ambient
    S = np.zeros((n, n))
    for W, v in zip(subspaces, weights):
        if W.ambient != n:
            raise DimensionMismatchError("subspaces live in different ambient spaces")
        if not math.isfinite(float(v)) or v <= 0:
            raise InvalidWeightError(f"weights must be positive, got {v}")
        S += float(v) ** 2 * orthogonal_projector_matrix(W, tol)
    return S
