"""
Structured logging setup
All library and command loggers are named structlog loggers writing to stderr
"""

import logging
import sys
from typing import Optional

import structlog

from src.config import NumericsConfig


def configure_logging(level: Optional[str] = None, json_output: Optional[bool] = None) -> None:
    """Route structlog through the standard logging module at the given level"""
    level_name = (level or NumericsConfig.LOG_LEVEL).upper()
    numeric_level = getattr(logging, level_name, logging.WARNING)
    use_json = NumericsConfig.LOG_JSON if json_output is None else json_output

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(message)s'))
    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(numeric_level)

    renderer = structlog.processors.JSONRenderer() if use_json else structlog.dev.ConsoleRenderer(colors=False)
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt='iso'),
            renderer,
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Named logger, e.g. get_logger('fusion.operator')"""
    # Unconfigured structlog prints every level to stdout
    if not structlog.is_configured():
        configure_logging()
    return structlog.get_logger(name)
