from src.projections.oblique import (
    GramMatrix,
    ObliqueProjection,
    adjoint,
    eigen_structure,
    gram,
    is_orthogonal,
    oblique,
    orthogonal_projector,
    transport,
)
from src.projections.sparse import (
    block_sparse_projection,
    coordinate_lift_projection,
    is_lower_triangular,
    select_pivot_rows,
    triangular_projection,
)

__all__ = [
    'GramMatrix',
    'ObliqueProjection',
    'adjoint',
    'block_sparse_projection',
    'coordinate_lift_projection',
    'eigen_structure',
    'gram',
    'is_lower_triangular',
    'is_orthogonal',
    'oblique',
    'orthogonal_projector',
    'select_pivot_rows',
    'transport',
    'triangular_projection',
]
