"""
CLI module for gdap.

This module provides the ``gdap`` command-line interface and the file
formats it reads and writes.
"""

from gdap.cli.main import app

__all__ = ["app"]
