"""Unit tests for configuration module."""

import pytest
from pydantic import ValidationError

from gdap.utils.config import DEFAULT_SEED, Config, get_config, reset_config


class TestConfig:
    """Test cases for Config class."""

    def test_default_config(self) -> None:
        """Test that default configuration loads successfully."""
        config = Config()
        assert config.seed == DEFAULT_SEED
        assert config.svd_rel_tol == 1e-12
        assert config.float_digits == 17
        assert config.workers == 1
        assert config.verify_trials == 500
        assert config.log_level == "WARNING"
        assert config.log_json is False

    def test_custom_values(self, test_config: Config) -> None:
        """Test custom configuration values."""
        assert test_config.seed == 7
        assert test_config.workers == 2
        assert test_config.verify_trials == 5

    def test_float_digits_bounds(self) -> None:
        """Test float_digits validation bounds."""
        assert Config(float_digits=6).float_digits == 6

        with pytest.raises(ValidationError):
            Config(float_digits=0)

        with pytest.raises(ValidationError):
            Config(float_digits=18)

    def test_workers_bounds(self) -> None:
        """Test workers validation bounds."""
        with pytest.raises(ValidationError):
            Config(workers=0)

        with pytest.raises(ValidationError):
            Config(workers=65)

    def test_tolerance_bounds(self) -> None:
        """Test that the relative SVD tolerance stays in [0, 1)."""
        with pytest.raises(ValidationError):
            Config(svd_rel_tol=-1e-3)

        with pytest.raises(ValidationError):
            Config(svd_rel_tol=1.0)

    def test_log_level_validation(self) -> None:
        """Test log level validation."""
        config = Config(log_level="debug")
        assert config.log_level == "DEBUG"

        with pytest.raises(ValidationError):
            Config(log_level="INVALID")


class TestEnvironment:
    """Test cases for environment-driven settings."""

    def test_seed_from_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that GDAP_SEED overrides the default seed."""
        monkeypatch.setenv("GDAP_SEED", "123")
        assert Config().seed == 123

    def test_singleton(self) -> None:
        """Test that get_config caches until reset."""
        first = get_config()
        assert get_config() is first
        reset_config()
        assert get_config() is not first

    def test_reset_rereads_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that reset_config picks up changed variables."""
        assert get_config().workers == 1
        monkeypatch.setenv("GDAP_WORKERS", "4")
        reset_config()
        assert get_config().workers == 4
