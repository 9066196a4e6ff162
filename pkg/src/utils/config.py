"""
Configuration management for the Weil zeta toolkit.

This module handles all configuration settings using Pydantic for validation
and type safety. Values come from the environment (prefix ``WEILZETA_``) or an
optional ``.env.local`` file.
"""

import logging
from functools import lru_cache
from typing import Any, Dict

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Config(BaseSettings):
    """Configuration class for the Weil zeta toolkit."""

    model_config = SettingsConfigDict(
        env_prefix="WEILZETA_",
        env_file=".env.local",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application Configuration
    log_level: str = Field(default="INFO", description="Logging level")
    debug: bool = Field(default=False, description="Debug mode")

    # Size guards
    max_points: int = Field(default=10**8, description="Largest search space any enumeration may walk")
    max_field_size: int = Field(default=10**8, description="Largest p^k accepted by make_field")
    max_table_size: int = Field(default=4 * 10**6, description="Largest field for which log/antilog tables are built")
    max_summand_group_order: int = Field(default=4096, description="Largest |N| for exhaustive summand checks")

    # Numerics
    weight_tolerance: float = Field(default=1e-6, description="Relative tolerance on |alpha| = q^(i/2)")
    root_precision_dps: int = Field(default=60, description="mpmath decimal precision for root finding")

    # Counting
    count_workers: int = Field(default=1, description="Worker processes for point counting")

    # Monitoring
    enable_enumeration_monitoring: bool = Field(default=True, description="Track enumerated points per stage")

    @field_validator(
        "max_points", "max_field_size", "max_table_size",
        "max_summand_group_order", "root_precision_dps", "count_workers",
    )
    @classmethod
    def positive_bounds(cls, v: int) -> int:
        """Bounds and counts must be positive."""
        if v < 1:
            raise ValueError("must be a positive integer")
        return v

    @field_validator("weight_tolerance")
    @classmethod
    def tolerance_range(cls, v: float) -> float:
        if not 0 < v < 1:
            raise ValueError("tolerance must lie in (0, 1)")
        return v

    @field_validator("log_level")
    @classmethod
    def known_level(cls, v: str) -> str:
        if not isinstance(logging.getLevelName(v.upper()), int):
            raise ValueError(f"unknown log level {v!r}")
        return v.upper()

    def get_guard_config(self) -> Dict[str, Any]:
        """Get the size guard settings as a plain dictionary."""
        return {
            "max_points": self.max_points,
            "max_field_size": self.max_field_size,
            "max_table_size": self.max_table_size,
            "max_summand_group_order": self.max_summand_group_order,
        }


@lru_cache(maxsize=1)
def get_config() -> Config:
    """Get the application configuration."""
    return Config()


def validate_config() -> bool:
    """Validate the configuration."""
    try:
        get_config.cache_clear()
        get_config()
        return True
    except Exception as e:
        from utils.logging import get_logger

        get_logger(__name__).error("configuration validation failed", error=str(e))
        return False
