"""Unit tests for gdap."""
