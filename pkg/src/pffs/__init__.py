from src.pffs.system import (
    ConsistencyReport,
    PffsSystem,
    PseudoframeValidation,
    analysis_direction,
    build_pffs,
    canonical_dual_in_subspace,
    fusion_operator_matrix,
    measurement_consistency,
    pffs_projection,
    validate_pseudoframe_pair,
)

__all__ = [
    'ConsistencyReport',
    'PffsSystem',
    'PseudoframeValidation',
    'analysis_direction',
    'build_pffs',
    'canonical_dual_in_subspace',
    'fusion_operator_matrix',
    'measurement_consistency',
    'pffs_projection',
    'validate_pseudoframe_pair',
]
