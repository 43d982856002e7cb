"""Integration tests for gdap."""
