"""
Reading and writing the toolkit's files
JSON goes through orjson (shortest round-trip float repr), frame CSVs through pandas
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import orjson
import pandas as pd
from pydantic import ValidationError

from src.config import Tolerances
from src.errors import ParseError
from src.fusion import OperatorReport
from src.linalg import Subspace
from src.logging_config import get_logger
from src.models.schemas import ProjectionFile, ReportFile, SubspaceFile
from src.projections import ObliqueProjection

logger = get_logger('models.storage')

PathLike = Union[str, Path]

JSON_OPTIONS = orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_INDENT_2


def _schema_message(error: ValidationError) -> str:
    first = error.errors()[0]
    location = '.'.join(str(part) for part in first.get('loc', ()))
    return f"{location}: {first.get('msg')}" if location else str(first.get('msg'))


def read_json(path: PathLike) -> Any:
    try:
        return orjson.loads(Path(path).read_bytes())
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror or e}")
    except orjson.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}")


def write_json(path: PathLike, payload: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(orjson.dumps(payload, option=JSON_OPTIONS))
    logger.debug("json_written", path=str(path))
    return path


def load_subspace_file(path: PathLike) -> SubspaceFile:
    try:
        return SubspaceFile.model_validate(read_json(path))
    except ValidationError as e:
        raise ParseError(f"{path}: {_schema_message(e)}")


def subspaces_from_file(data: SubspaceFile, tol: Optional[Tolerances] = None
                        ) -> Tuple[List[Subspace], List[float], List[Optional[Subspace]]]:
    """Subspaces, weights and optional null spaces in file order

    A null space with no columns (k = N) is the same as none.
    """
    subspaces = [Subspace(np.array(entry.basis), tol) for entry in data.subspaces]
    weights = [entry.weight for entry in data.subspaces]
    nullspaces = [
        Subspace(np.array(entry.nullspace), tol) if entry.nullspace and entry.nullspace[0] else None
        for entry in data.subspaces
    ]
    return subspaces, weights, nullspaces


def save_subspace_file(path: PathLike, subspaces: Sequence[Subspace],
                       weights: Optional[Sequence[float]] = None) -> Path:
    if weights is None:
        weights = [1.0] * len(subspaces)
    payload = {
        'ambient_dim': subspaces[0].ambient,
        'subspaces': [{'basis': W.basis, 'weight': float(v)} for W, v in zip(subspaces, weights)],
    }
    return write_json(path, payload)


def load_projection_file(path: PathLike) -> ProjectionFile:
    try:
        return ProjectionFile.model_validate(read_json(path))
    except ValidationError as e:
        raise ParseError(f"{path}: {_schema_message(e)}")


def projection_payload(projections: Sequence[ObliqueProjection], weights: Sequence[float]) -> Dict[str, Any]:
    return {
        'ambient_dim': projections[0].ambient,
        'projections': [{'matrix': P.matrix, 'weight': float(v)} for P, v in zip(projections, weights)],
    }


def save_projection_file(path: PathLike, projections: Sequence[ObliqueProjection],
                         weights: Sequence[float]) -> Path:
    return write_json(path, projection_payload(projections, weights))


def report_payload(report: OperatorReport) -> Dict[str, Any]:
    """Report dictionary, checked against the report schema"""
    payload = report.to_dict()
    try:
        ReportFile.model_validate(payload)
    except ValidationError as e:
        raise ParseError(f"inconsistent report: {_schema_message(e)}")
    return payload


def read_frame_csv(path: PathLike) -> np.ndarray:
    """M x N frame, one vector per row, no header"""
    try:
        frame = pd.read_csv(path, header=None, skipinitialspace=True, float_precision='round_trip')
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ParseError(f"cannot read frame from {path}: {e}")
    try:
        values = frame.to_numpy(dtype=float)
    except (TypeError, ValueError) as e:
        raise ParseError(f"{path} has non-numeric entries: {e}")
    if values.ndim != 2 or values.size == 0 or np.isnan(values).any():
        raise ParseError(f"{path} must be a complete numeric table")
    return values


def write_frame_csv(path: PathLike, X) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(np.asarray(X, dtype=float)).to_csv(path, header=False, index=False, float_format='%.17g')
    return path
