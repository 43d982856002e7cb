"""Test suite for gdap."""
