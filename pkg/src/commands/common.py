"""
Shared plumbing for the command handlers
JSON output on stdout, error mapping to exit codes, tolerance flags
"""

from functools import wraps
from typing import Any, Dict, List

import click
import orjson
from pydantic import ValidationError

from src.config import get_tolerances
from src.errors import AnalysisError, FusionFrameError, InputError, NotAProjectionError, ParseError
from src.logging_config import get_logger

logger = get_logger('commands')

EXIT_INPUT = 1
EXIT_ANALYSIS = 2


class FusionGroup(click.Group):
    """Command group whose usage errors exit with the input-error code"""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_INPUT
            raise


def emit(payload: Dict[str, Any]) -> None:
    click.echo(orjson.dumps(payload, option=orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_INDENT_2).decode())


def finish(passed: bool) -> None:
    """Exit 2 when an analytic target was not met"""
    if not passed:
        raise click.exceptions.Exit(EXIT_ANALYSIS)


def error_payload(error: Exception) -> Dict[str, Any]:
    payload = {'success': False, 'error': str(error), 'error_type': type(error).__name__}
    if isinstance(error, NotAProjectionError) and error.index is not None:
        payload['index'] = error.index
        payload['residual'] = error.residual
    return payload


def handle_errors(f):
    """Map library errors to a JSON error object and an exit code"""
    @wraps(f)
    def decorated(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except FusionFrameError as e:
            code = EXIT_ANALYSIS if isinstance(e, AnalysisError) else EXIT_INPUT
            logger.error("command_failed", command=f.__name__, error=str(e), error_type=type(e).__name__)
            emit(error_payload(e))
            raise click.exceptions.Exit(code)
    return decorated


def tolerance_options(f):
    """Add --tol-rank/--tol-eq/--tol-eig and pass the resolved ``tol`` to the handler"""
    @click.option('--tol-rank', type=float, default=None, help='Relative rank threshold')
    @click.option('--tol-eq', type=float, default=None, help='Entrywise equality threshold')
    @click.option('--tol-eig', type=float, default=None, help='Eigenvalue threshold for frame decisions')
    @wraps(f)
    def decorated(*args, tol_rank=None, tol_eq=None, tol_eig=None, **kwargs):
        try:
            tol = get_tolerances().override(rank=tol_rank, eq=tol_eq, eig=tol_eig)
        except ValidationError as e:
            raise ParseError(f"invalid tolerance: {e.errors()[0].get('msg')}")
        return f(*args, tol=tol, **kwargs)
    return decorated


def parse_int_list(text: str, name: str) -> List[int]:
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise ParseError(f"--{name} must be comma-separated integers, got '{text}'")


def parse_float_list(text: str, name: str) -> List[float]:
    try:
        return [float(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise ParseError(f"--{name} must be comma-separated numbers, got '{text}'")


def require(condition: bool, message: str) -> None:
    if not condition:
        raise InputError(message)
