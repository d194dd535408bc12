"""
File schemas for subspaces, projections and reports
Matrices are row-major nested lists; indices are 0-based
"""

import math
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

Matrix = List[List[float]]


def _shape(matrix: Matrix, name: str) -> tuple:
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if any(len(row) != cols for row in matrix):
        raise ValueError(f"{name} is ragged")
    if any(not math.isfinite(value) for row in matrix for value in row):
        raise ValueError(f"{name} contains non-finite entries")
    return rows, cols


class SubspaceEntry(BaseModel):
    basis: Matrix
    weight: float = Field(default=1.0, gt=0)
    nullspace: Optional[Matrix] = None


class SubspaceFile(BaseModel):
    """Input of ``analyze``: one entry per subspace W_i, basis vectors as columns"""

    ambient_dim: int = Field(ge=1)
    subspaces: List[SubspaceEntry] = Field(min_length=1)

    @model_validator(mode='after')
    def check_shapes(self) -> 'SubspaceFile':
        n = self.ambient_dim
        for i, entry in enumerate(self.subspaces):
            rows, k = _shape(entry.basis, f"subspaces[{i}].basis")
            if rows != n or not 1 <= k <= n:
                raise ValueError(f"subspaces[{i}].basis must be {n} x k with 1 <= k <= {n}, got {rows} x {k}")
            if entry.nullspace is not None:
                null_rows, null_cols = _shape(entry.nullspace, f"subspaces[{i}].nullspace")
                if null_rows != n or null_cols != n - k:
                    raise ValueError(
                        f"subspaces[{i}].nullspace must be {n} x {n - k}, got {null_rows} x {null_cols}")
        return self


class ProjectionEntry(BaseModel):
    matrix: Matrix
    weight: float = Field(default=1.0, gt=0)


class ProjectionFile(BaseModel):
    """Explicit projection matrices with weights, as read by ``verify``"""

    ambient_dim: int = Field(ge=1)
    projections: List[ProjectionEntry] = Field(min_length=1)

    @model_validator(mode='after')
    def check_shapes(self) -> 'ProjectionFile':
        n = self.ambient_dim
        for i, entry in enumerate(self.projections):
            if _shape(entry.matrix, f"projections[{i}].matrix") != (n, n):
                raise ValueError(f"projections[{i}].matrix must be {n} x {n}")
        return self


class ProjectionSummary(BaseModel):
    idempotency_residual: float = Field(ge=0)
    gram_nnz: int = Field(ge=0)
    gram_diagonal: List[float]


class ReportFile(BaseModel):
    model_config = ConfigDict(extra='forbid')

    operator: Matrix
    lower_bound: float
    upper_bound: float
    spectrum: List[float]
    is_frame: bool
    is_tight: bool
    tight_constant: Optional[float] = None
    is_diagonal: bool
    is_identity_multiple: bool
    nnz: int = Field(ge=0)
    block_pattern: List[List[int]]
    per_projection: List[ProjectionSummary] = Field(default_factory=list)

    @model_validator(mode='after')
    def check_consistency(self) -> 'ReportFile':
        if self.lower_bound > self.upper_bound:
            raise ValueError("lower bound exceeds upper bound")
        if self.is_identity_multiple and not (self.is_tight and self.is_diagonal):
            raise ValueError("a multiple of the identity must be tight and diagonal")
        if self.is_tight and self.tight_constant is None:
            raise ValueError("tight reports carry their constant")
        return self
