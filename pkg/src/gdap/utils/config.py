"""
Configuration management for gdap.

This module provides settings loading and validation using Pydantic
settings with support for ``GDAP_*`` environment variables and .env files.
"""

from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

DEFAULT_SEED = 20240611


class Config(BaseSettings):
    """
    Toolkit settings with environment variable support.

    Attributes:
        seed: Default seed for the randomized verification suites
        svd_rel_tol: Relative singular-value drop tolerance (times sigma_1)
        svd_abs_tol: Absolute singular-value drop tolerance
        float_digits: Significant digits used when serializing floats
        workers: Thread fan-out used when pulling back several components
        verify_trials: Random configurations drawn per property suite
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_json: Enable JSON format for logs
    """

    model_config = SettingsConfigDict(
        env_prefix="GDAP_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    seed: int = Field(
        default=DEFAULT_SEED,
        ge=0,
        description="Default seed for verification suites",
    )

    # Decomposition
    svd_rel_tol: float = Field(
        default=1e-12,
        ge=0.0,
        lt=1.0,
        description="Singular values below svd_rel_tol * sigma_1 are dropped",
    )
    svd_abs_tol: float = Field(
        default=1e-300,
        ge=0.0,
        description="Singular values below this absolute floor are dropped",
    )

    # Output
    float_digits: int = Field(
        default=17,
        ge=1,
        le=17,
        description="Significant digits for CSV/JSON floats",
    )

    # Execution
    workers: int = Field(
        default=1,
        ge=1,
        le=64,
        description="Threads used by pull_back_all",
    )
    verify_trials: int = Field(
        default=500,
        ge=1,
        description="Random configurations per verification suite",
    )

    # Logging Configuration
    log_level: str = Field(
        default="WARNING",
        description="Logging level",
    )
    log_json: bool = Field(
        default=False,
        description="Enable JSON format for logs",
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """
        Validate that the log level is valid.

        Args:
            v: Log level string to validate

        Returns:
            Validated log level in uppercase

        Raises:
            ValueError: If the log level is invalid
        """
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        v_upper = v.upper()
        if v_upper not in valid_levels:
            raise ValueError(
                f"Invalid log level: {v}. Must be one of {', '.join(sorted(valid_levels))}"
            )
        return v_upper


_config: Optional[Config] = None


def get_config() -> Config:
    """
    Get the global configuration instance (singleton pattern).

    Returns:
        Global Config instance

    Example:
        >>> config = get_config()
        >>> config.float_digits
        17
    """
    global _config
    if _config is None:
        _config = Config()
    return _config


def reset_config() -> None:
    """Drop the cached configuration so the next access re-reads the environment."""
    global _config
    _config = None
