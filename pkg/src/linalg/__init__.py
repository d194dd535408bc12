from src.linalg.core import (
    Subspace,
    as_matrix,
    as_vector,
    column_space,
    complement_indices,
    contains,
    coordinate_subspace,
    frozen,
    is_complementary,
    is_orthogonal_matrix,
    max_abs,
    null_space,
    numerical_rank,
    orthogonal_complement,
    orthogonal_projector_matrix,
    orthonormal_basis,
    orthonormalize,
    pivoted_qr,
    same_span,
    solve_linear,
    symmetric_eigendecomposition,
)

__all__ = [
    'Subspace',
    'as_matrix',
    'as_vector',
    'column_space',
    'complement_indices',
    'contains',
    'coordinate_subspace',
    'frozen',
    'is_complementary',
    'is_orthogonal_matrix',
    'max_abs',
    'null_space',
    'numerical_rank',
    'orthogonal_complement',
    'orthogonal_projector_matrix',
    'orthonormal_basis',
    'orthonormalize',
    'pivoted_qr',
    'same_span',
    'solve_linear',
    'symmetric_eigendecomposition',
]
