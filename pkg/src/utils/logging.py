"""Logging configuration for the fluxonium array optimizer."""

import logging
import sys
from typing import Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# numpy/scipy emit RuntimeWarnings through the warnings module
WARNINGS_LOGGER = "py.warnings"


def _handler(handler: logging.Handler, level: int) -> logging.Handler:
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    return handler


def setup_logging(level: str = "INFO", log_file: Optional[str] = None, verbose: bool = False) -> None:
    """Configure logging for the application.

    Without --verbose or --log-file the user only sees Rich console output; grid refinements,
    per-N progress and solver warnings stay silent.

    Args:
        level: Log level for stderr (DEBUG, INFO, WARNING, ERROR)
        log_file: Optional file that receives everything at DEBUG
        verbose: Mirror log records on stderr
    """
    numeric_level = getattr(logging, level.upper(), logging.INFO)
    silent = not verbose and not log_file

    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    if verbose:
        root_logger.addHandler(_handler(logging.StreamHandler(sys.stderr), numeric_level))
    if log_file:
        root_logger.addHandler(_handler(logging.FileHandler(log_file), logging.DEBUG))

    if silent:
        root_logger.setLevel(logging.CRITICAL)
    else:
        root_logger.setLevel(logging.DEBUG if log_file else numeric_level)

    logging.captureWarnings(not silent)
    package_level = logging.CRITICAL if silent else logging.NOTSET
    for name in ("src", WARNINGS_LOGGER):
        logging.getLogger(name).setLevel(package_level)
