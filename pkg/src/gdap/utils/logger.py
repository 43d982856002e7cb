"""
Structured logging for gdap.

Log lines go to standard error; standard output carries command results
(CSV/JSON) and must stay parseable. Library modules get their logger from
``get_logger(__name__)`` and emit snake_case events with key-value context,
e.g. ``logger.debug("pull_back_done", N=27, d=7, tau=3)``.
"""

import logging
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from typing import Any

import numpy as np
import structlog
from structlog.types import EventDict, Processor

# arrays longer than this are summarized instead of listed
MAX_LOGGED_ITEMS = 16


def numpy_to_builtin(logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
    """
    Replace numpy scalars and arrays in the event with plain Python values.

    ``np.int64`` and arrays are not JSON serializable, and index arithmetic
    in gdap routinely produces them.
    """
    for key, value in event_dict.items():
        if isinstance(value, np.generic):
            event_dict[key] = value.item()
        elif isinstance(value, np.ndarray):
            if value.size <= MAX_LOGGED_ITEMS:
                event_dict[key] = value.tolist()
            else:
                event_dict[key] = f"<ndarray shape={value.shape} dtype={value.dtype}>"
    return event_dict


def setup_logging(log_level: str = "WARNING", json_format: bool = False) -> None:
    """
    Configure structlog and the stdlib root logger.

    Safe to call repeatedly; the CLI calls it once per invocation.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        json_format: Render one JSON object per line instead of console output

    Raises:
        ValueError: If an invalid log level is provided
    """
    level = getattr(logging, log_level.upper(), None)
    if not isinstance(level, int):
        raise ValueError(f"Invalid log level: {log_level}")

    processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.stdlib.PositionalArgumentsFormatter(),
        numpy_to_builtin,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
    ]
    if json_format:
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level, force=True)


@contextmanager
def bound_context(**values: Any) -> Iterator[None]:
    """Attach key-value context to every event logged inside the block."""
    with structlog.contextvars.bound_contextvars(**values):
        yield


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """
    Get a structured logger instance.

    Args:
        name: Name for the logger (typically __name__)

    Returns:
        Configured structured logger instance
    """
    return structlog.get_logger(name)
