from src.constructions.diagonal import (
    check_dimension_restriction,
    diagonal_gram_search,
    forced_basis,
    prescribed_diagonal,
)
from src.constructions.parseval import WEIGHT_SCHEMES, ParsevalConstruction, parseval_from_frame
from src.constructions.tight import (
    TightFamily,
    alignment,
    minimum_member_count,
    residual_chain,
    tight_chain,
    tight_chain_general,
    tight_pair,
    transport_family,
)

__all__ = [
    'WEIGHT_SCHEMES',
    'ParsevalConstruction',
    'TightFamily',
    'alignment',
    'check_dimension_restriction',
    'diagonal_gram_search',
    'forced_basis',
    'minimum_member_count',
    'parseval_from_frame',
    'prescribed_diagonal',
    'residual_chain',
    'tight_chain',
    'tight_chain_general',
    'tight_pair',
    'transport_family',
]
