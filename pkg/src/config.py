"""
Numerical configuration for the fusion frame toolkit
Tolerances and search limits, overridable from the environment or a .env file
"""

import os
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

load_dotenv()


class NumericsConfig:
    """Defaults for every tolerance used by the library"""

    # Rank decisions are relative to the largest pivot
    TOL_RANK = float(os.getenv('FUSION_TOL_RANK', '1e-10'))
    TOL_EQ = float(os.getenv('FUSION_TOL_EQ', '1e-9'))
    TOL_EIG = float(os.getenv('FUSION_TOL_EIG', '1e-9'))

    # Relative spectral gap (D - C) / D accepted as tight
    TIGHT_RTOL = float(os.getenv('FUSION_TIGHT_RTOL', '1e-8'))

    # Exhaustive K-subset search refuses larger ambient dimensions
    SEARCH_MAX_DIM = int(os.getenv('FUSION_SEARCH_MAX_DIM', '16'))

    # Logging
    LOG_LEVEL = os.getenv('FUSION_LOG_LEVEL', 'WARNING')
    LOG_JSON = os.getenv('FUSION_LOG_JSON', 'false').lower() in ('1', 'true', 'yes')


class Tolerances(BaseModel):
    """Thresholds for rank, entrywise equality and eigenvalue decisions"""

    model_config = ConfigDict(frozen=True)

    rank: float = Field(default=NumericsConfig.TOL_RANK, gt=0)
    eq: float = Field(default=NumericsConfig.TOL_EQ, gt=0)
    eig: float = Field(default=NumericsConfig.TOL_EIG, gt=0)
    tight_rtol: float = Field(default=NumericsConfig.TIGHT_RTOL, gt=0)

    def override(self, rank: Optional[float] = None, eq: Optional[float] = None,
                 eig: Optional[float] = None) -> 'Tolerances':
        """Return a copy with the given thresholds replaced"""
        updates: Dict[str, Any] = {}
        if rank is not None:
            updates['rank'] = rank
        if eq is not None:
            updates['eq'] = eq
        if eig is not None:
            updates['eig'] = eig
        if not updates:
            return self
        # model_copy skips validation, so rebuild
        return Tolerances(**{**self.model_dump(), **updates})


_default_tolerances = Tolerances()


def get_tolerances(tol: Optional[Tolerances] = None) -> Tolerances:
    """Resolve an optional tolerance argument to the configured default"""
    return tol if tol is not None else _default_tolerances
