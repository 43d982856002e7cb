"""Pytest configuration and fixtures for gdap tests."""

from collections.abc import Iterator

import numpy as np
import pytest

from gdap.core.models import EmbeddingConfig, TimeSeries, validate_config
from gdap.utils.config import Config, reset_config

SETTINGS = (
    "SEED",
    "SVD_REL_TOL",
    "SVD_ABS_TOL",
    "FLOAT_DIGITS",
    "WORKERS",
    "VERIFY_TRIALS",
    "LOG_LEVEL",
    "LOG_JSON",
)


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """
    Drop the cached settings and any GDAP_ variables around every test.

    Yields:
        Nothing; the cache is cleared again afterwards
    """
    for name in SETTINGS:
        monkeypatch.delenv(f"GDAP_{name}", raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def test_config() -> Config:
    """
    Create a test configuration instance.

    Returns:
        Config instance with test values
    """
    return Config(seed=7, workers=2, verify_trials=5, log_level="DEBUG")


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for randomized tests."""
    return np.random.default_rng(20240611)


@pytest.fixture
def example_type0() -> EmbeddingConfig:
    """The (N, d, tau) = (27, 7, 3) configuration, 0-based."""
    return validate_config(27, 7, 3, 0)


@pytest.fixture
def example_type1() -> EmbeddingConfig:
    """The (N, d, tau) = (27, 7, 3) configuration, 1-based."""
    return validate_config(27, 7, 3, 1)


@pytest.fixture
def ramp_type0() -> TimeSeries:
    """x[n] = n for n = 0..26, so every entry names its own index."""
    return TimeSeries(values=np.arange(27, dtype=np.float64), convention=0)


@pytest.fixture
def ramp_type1() -> TimeSeries:
    """x[n] = n for n = 1..27."""
    return TimeSeries(values=np.arange(1, 28, dtype=np.float64), convention=1)
