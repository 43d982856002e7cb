"""
Utilities module for gdap.

This module provides logging and configuration helpers.
"""

from gdap.utils.config import Config, get_config, reset_config
from gdap.utils.logger import bound_context, get_logger, setup_logging

__all__ = [
    "Config",
    "get_config",
    "reset_config",
    "bound_context",
    "get_logger",
    "setup_logging",
]
