"""
Structural reports on a fusion frame operator
Frame bounds, tightness, diagonality, sparsity and the block pattern of S
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from src.config import Tolerances, get_tolerances
from src.fusion.operator import FusionFrame, frame_operator
from src.linalg import max_abs, symmetric_eigendecomposition
from src.logging_config import get_logger
from src.projections import gram

logger = get_logger('fusion.report')


@dataclass(frozen=True)
class MemberSummary:
    idempotency_residual: float
    gram_nnz: int
    gram_diagonal: List[float]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'idempotency_residual': self.idempotency_residual,
            'gram_nnz': self.gram_nnz,
            'gram_diagonal': list(self.gram_diagonal),
        }


@dataclass(frozen=True, eq=False)
class OperatorReport:
    """Everything the CLI reports about S"""

    operator: np.ndarray
    lower: float
    upper: float
    spectrum: np.ndarray
    is_frame: bool
    is_tight: bool
    tight_constant: Optional[float]
    is_diagonal: bool
    is_identity_multiple: bool
    nnz: int
    block_pattern: List[List[int]]
    per_projection: List[MemberSummary] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'operator': self.operator.tolist(),
            'lower_bound': self.lower,
            'upper_bound': self.upper,
            'spectrum': self.spectrum.tolist(),
            'is_frame': self.is_frame,
            'is_tight': self.is_tight,
            'tight_constant': self.tight_constant,
            'is_diagonal': self.is_diagonal,
            'is_identity_multiple': self.is_identity_multiple,
            'nnz': self.nnz,
            'block_pattern': [list(block) for block in self.block_pattern],
            'per_projection': [s.to_dict() for s in self.per_projection],
        }


def block_pattern(S, tol: Optional[Tolerances] = None) -> List[List[int]]:
    """Connected components of the graph i ~ j when |S_ij| > tol.eq"""
    tol = get_tolerances(tol)
    S = np.asarray(S)
    adjacency = np.abs(S) > tol.eq
    adjacency = adjacency | adjacency.T
    count, labels = connected_components(csr_matrix(adjacency), directed=False)
    blocks = [sorted(int(i) for i in np.flatnonzero(labels == c)) for c in range(count)]
    return sorted(blocks, key=lambda block: block[0])


def operator_report(S, tol: Optional[Tolerances] = None,
                    per_projection: Optional[List[MemberSummary]] = None) -> OperatorReport:
    """Classify an assembled frame operator"""
    tol = get_tolerances(tol)
    S = np.asarray(S, dtype=float)
    eigenvalues, _ = symmetric_eigendecomposition(S, tol)
    lower, upper = float(eigenvalues[0]), float(eigenvalues[-1])

    is_frame = lower > tol.eig
    is_tight = is_frame and (upper - lower) <= tol.tight_rtol * upper
    tight_constant = float(np.mean(eigenvalues)) if is_tight else None

    off_diagonal = S - np.diag(np.diag(S))
    is_diagonal = max_abs(off_diagonal) <= tol.eq
    is_identity_multiple = False
    if is_tight and is_diagonal:
        diag = np.diag(S)
        is_identity_multiple = max_abs(diag - tight_constant) <= tol.eq * max(1.0, abs(tight_constant))

    report = OperatorReport(
        operator=S.copy(),
        lower=lower,
        upper=upper,
        spectrum=eigenvalues,
        is_frame=bool(is_frame),
        is_tight=bool(is_tight),
        tight_constant=tight_constant,
        is_diagonal=bool(is_diagonal),
        is_identity_multiple=bool(is_identity_multiple),
        nnz=int(np.sum(np.abs(S) > tol.eq)),
        block_pattern=block_pattern(S, tol),
        per_projection=list(per_projection or []),
    )
    logger.debug("operator_report", lower=lower, upper=upper, tight=report.is_tight, nnz=report.nnz)
    return report


def member_summaries(F: FusionFrame, tol: Optional[Tolerances] = None) -> List[MemberSummary]:
    """Idempotency residual and Gram pattern of each member"""
    summaries = []
    for member in F.members:
        G = gram(member.projection)
        summaries.append(MemberSummary(
            idempotency_residual=member.projection.idempotency_residual(),
            gram_nnz=G.nnz(tol),
            gram_diagonal=[float(d) for d in G.diagonal()],
        ))
    return summaries


def structure_report(F: FusionFrame, tol: Optional[Tolerances] = None) -> OperatorReport:
    return operator_report(frame_operator(F), tol, member_summaries(F, tol))
