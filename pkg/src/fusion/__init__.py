from src.fusion.operator import (
    STRATEGIES,
    FusionFrame,
    WeightedProjection,
    analysis,
    build_fusion_frame,
    classical_frame_operator,
    energy,
    frame_bounds,
    frame_operator,
    reconstruct,
    synthesis,
)
from src.fusion.report import (
    MemberSummary,
    OperatorReport,
    block_pattern,
    member_summaries,
    operator_report,
    structure_report,
)

__all__ = [
    'STRATEGIES',
    'FusionFrame',
    'MemberSummary',
    'OperatorReport',
    'WeightedProjection',
    'analysis',
    'block_pattern',
    'build_fusion_frame',
    'classical_frame_operator',
    'energy',
    'frame_bounds',
    'frame_operator',
    'member_summaries',
    'operator_report',
    'reconstruct',
    'structure_report',
    'synthesis',
]
