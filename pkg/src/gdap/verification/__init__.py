"""
Invariant suites and reference tables for gdap.

This package backs the ``gdap verify`` and ``gdap tables`` commands.
"""

from gdap.verification.reference import (
    MISPRINTED_ROWS_TYPE0,
    REFERENCE_ROWS_TYPE0,
    REFERENCE_ROWS_TYPE1,
    example_config,
    example_table,
)
from gdap.verification.suites import SUITES, SuiteResult, random_config, run_suites

__all__ = [
    "MISPRINTED_ROWS_TYPE0",
    "REFERENCE_ROWS_TYPE0",
    "REFERENCE_ROWS_TYPE1",
    "SUITES",
    "SuiteResult",
    "example_config",
    "example_table",
    "random_config",
    "run_suites",
]
