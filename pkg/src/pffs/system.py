"""
Pseudoframes for subspaces
Analysis vectors x_n = w_n + z_n (z_n orthogonal to W) paired with the duals of
{w_n} inside W realize the oblique projection Y X^T onto W along span{x_n}^perp
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from src.config import Tolerances, get_tolerances
from src.errors import (
    DegenerateDirectionError,
    DimensionMismatchError,
    NotAFrameOfSubspaceError,
    PerturbationNotOrthogonalError,
)
from src.linalg import (
    Subspace,
    as_matrix,
    as_vector,
    frozen,
    max_abs,
    null_space,
    numerical_rank,
    orthonormal_basis,
    symmetric_eigendecomposition,
)
from src.logging_config import get_logger
from src.projections import ObliqueProjection

logger = get_logger('pffs.system')

# Reconstruction residuals accepted by the validators
RESIDUAL_LIMIT = 1e-8


@dataclass(frozen=True, eq=False)
class PffsSystem:
    """Frame {w_n} of W (columns), its duals in W, perturbations z_n and x_n = w_n + z_n"""

    W: Subspace
    w: np.ndarray
    w_dual: np.ndarray
    z: np.ndarray
    x: np.ndarray

    def __post_init__(self):
        for name in ('w', 'w_dual', 'z', 'x'):
            object.__setattr__(self, name, frozen(getattr(self, name)))

    @property
    def X(self) -> np.ndarray:
        return self.x

    @property
    def Y(self) -> np.ndarray:
        return self.w_dual

    @property
    def size(self) -> int:
        return self.w.shape[1]

    def is_consistent(self, tol: Optional[Tolerances] = None) -> bool:
        """span{x_n} has dimension dim W, so the null space of Y X^T is exactly span{x_n}^perp"""
        return numerical_rank(self.x, tol) == self.W.dim


def _columns(values, n: int, name: str) -> np.ndarray:
    M = as_matrix(values, name)
    if M.shape[0] != n:
        raise DimensionMismatchError(f"{name} must have {n} rows (one vector per column), got {M.shape[0]}")
    return M


def canonical_dual_in_subspace(W: Subspace, w, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Canonical dual of the frame {w_n} of W, as columns

    With Q orthonormal for W the dual is Q S_W^{-1} Q^T w where S_W = Q^T w w^T Q
    is the frame operator restricted to W. A single vector w gives w / |w|^2.
    """
    tol = get_tolerances(tol)
    n = W.ambient
    w = _columns(w, n, 'w')
    Q = orthonormal_basis(W, tol)
    outside = w - Q @ (Q.T @ w)
    if max_abs(outside) > tol.eq * max(1.0, max_abs(w)):
        raise NotAFrameOfSubspaceError("frame vectors do not lie in W")

    coordinates = Q.T @ w
    S_W = coordinates @ coordinates.T
    eigenvalues, V = symmetric_eigendecomposition(S_W, tol)
    if eigenvalues[0] <= tol.eig:
        raise NotAFrameOfSubspaceError(
            f"vectors do not span W (restricted frame operator has eigenvalue {eigenvalues[0]:.3e})")
    return Q @ (V @ ((V.T @ coordinates) / eigenvalues[:, None]))


def build_pffs(W: Subspace, w, z=None, tol: Optional[Tolerances] = None) -> PffsSystem:
    """Form x_n = w_n + z_n with each z_n orthogonal to W"""
    tol = get_tolerances(tol)
    n = W.ambient
    w = _columns(w, n, 'w')
    z = np.zeros_like(w) if z is None else _columns(z, n, 'z')
    if z.shape != w.shape:
        raise DimensionMismatchError(f"z has shape {z.shape}, w has {w.shape}")

    Q = orthonormal_basis(W, tol)
    if max_abs(Q.T @ z) > tol.eq * max(1.0, max_abs(z)):
        raise PerturbationNotOrthogonalError("perturbations have a component inside W")

    duals = canonical_dual_in_subspace(W, w, tol)
    x = w + z
    # span{x}^perp meets W only in 0 exactly when x^T restricted to W is injective
    if numerical_rank(Q.T @ x, tol) < W.dim:
        raise DegenerateDirectionError("span{x_n}^perp intersects W")
    logger.debug("pffs_built", ambient=n, rank=W.dim, vectors=w.shape[1],
                 analysis_rank=numerical_rank(x, tol))
    return PffsSystem(W, w, duals, z, x)


def analysis_direction(sys: PffsSystem, tol: Optional[Tolerances] = None) -> Optional[Subspace]:
    """span{x_n}^perp, or None when the x_n span the whole space"""
    return null_space(sys.x.T, tol)


def pffs_projection(sys: PffsSystem, tol: Optional[Tolerances] = None) -> ObliqueProjection:
    """Y X^T: onto W along the null space of X^T"""
    matrix = sys.Y @ sys.X.T
    return ObliqueProjection(matrix, sys.W, null_space(matrix, tol), tol)


def fusion_operator_matrix(sys: PffsSystem) -> np.ndarray:
    """X Y^T Y X^T, the Gram matrix of the induced projection"""
    S = sys.X @ sys.Y.T @ sys.Y @ sys.X.T
    return 0.5 * (S + S.T)


@dataclass
class PseudoframeValidation:
    frame_residual: float
    annihilation_residual: float
    identity_residual: float
    errors: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.errors

    def to_dict(self) -> Dict[str, Any]:
        return {
            'valid': self.passed,
            'errors': list(self.errors),
            'frame_residual': self.frame_residual,
            'annihilation_residual': self.annihilation_residual,
            'identity_residual': self.identity_residual,
        }


def validate_pseudoframe_pair(sys: PffsSystem, x_tilde=None, tol: Optional[Tolerances] = None) -> PseudoframeValidation:
    """Check the pseudoframe conditions on an orthonormal basis of W

    - {pi_W x_n} is a frame of W with dual {pi_W x~_n}
    - sum <f, pi_W x_n> (I - pi_W) x~_n vanishes on W
    - f = sum <f, x_n> x~_n on W

    ``x_tilde`` defaults to the duals held by the system. Failures are reported,
    never raised.
    """
    tol = get_tolerances(tol)
    n = sys.W.ambient
    x_tilde = sys.w_dual if x_tilde is None else _columns(x_tilde, n, 'x_tilde')
    if x_tilde.shape != sys.x.shape:
        raise DimensionMismatchError(f"x_tilde has shape {x_tilde.shape}, expected {sys.x.shape}")

    Q = orthonormal_basis(sys.W, tol)
    pi_W = Q @ Q.T
    projected_x = pi_W @ sys.x
    projected_dual = pi_W @ x_tilde
    off_W = x_tilde - projected_dual

    frame_residual = max_abs(projected_dual @ (projected_x.T @ Q) - Q)
    annihilation_residual = max_abs(off_W @ (projected_x.T @ Q))
    identity_residual = max_abs(x_tilde @ (sys.x.T @ Q) - Q)

    errors = []
    if frame_residual > RESIDUAL_LIMIT:
        errors.append(f"projected pair does not reconstruct W (residual {frame_residual:.3e})")
    if annihilation_residual > RESIDUAL_LIMIT:
        errors.append(f"dual components outside W do not cancel (residual {annihilation_residual:.3e})")
    if identity_residual > RESIDUAL_LIMIT:
        errors.append(f"expansion f = sum <f, x_n> x~_n fails on W (residual {identity_residual:.3e})")
    return PseudoframeValidation(frame_residual, annihilation_residual, identity_residual, errors)


@dataclass
class ConsistencyReport:
    in_subspace: bool
    deviations: np.ndarray
    max_deviation: float
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'valid': self.passed,
            'in_subspace': self.in_subspace,
            'deviations': self.deviations.tolist(),
            'max_deviation': self.max_deviation,
        }


def measurement_consistency(sys: PffsSystem, f, tol: Optional[Tolerances] = None) -> ConsistencyReport:
    """Deviations <f, x_n> - <f, w_n> = <f, z_n>; all zero when f lies in W"""
    tol = get_tolerances(tol)
    f = as_vector(f, 'f')
    if f.shape[0] != sys.W.ambient:
        raise DimensionMismatchError(f"f has length {f.shape[0]}, system acts on R^{sys.W.ambient}")
    Q = orthonormal_basis(sys.W, tol)
    scale = max(1.0, float(np.linalg.norm(f)))
    in_subspace = float(np.linalg.norm(f - Q @ (Q.T @ f))) <= tol.eq * scale
    deviations = sys.z.T @ f
    max_deviation = max_abs(deviations)
    passed = (not in_subspace) or max_deviation <= tol.eq * scale * max(1.0, max_abs(sys.z))
    return ConsistencyReport(in_subspace, deviations, max_deviation, passed)

