"""Configuration management for the Ignatiev frame toolkit."""

import logging
from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Diagnostics and sweep scheduling settings.

    None of these change what a decision command prints; they steer logging,
    worker processes and the sample sizes used by ``verify``.
    """

    model_config = SettingsConfigDict(
        env_prefix="IGNATIEV_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = Field(default="WARNING", description="Level of the stderr log handler")
    log_file: Optional[Path] = Field(default=None, description="Optional rotating log file")

    # Sweep scheduling
    workers: int = Field(default=1, ge=1, le=64, description="Worker processes for verify")
    chunk_size: int = Field(default=64, ge=1, description="Left-hand items per worker job")

    # Sampling
    random_seed: int = Field(default=20180, description="Seed for sampled formulas and filters")
    formula_samples: int = Field(default=240, ge=1, description="Random formulas per semantic sweep")
    sequence_samples: int = Field(default=60, ge=1, description="Sampled suitable sequences")
    pair_samples: int = Field(default=600, ge=1, description="Sampled filter pairs for relations")
    point_samples: int = Field(
        default=200, ge=1, description="Points swept by the per-point oracle checks (all when fewer)"
    )
    partner_samples: int = Field(
        default=12, ge=1, description="Partners per point in pairwise checks (all when fewer)"
    )

    @field_validator("log_level")
    @classmethod
    def validate_level(cls, v: str) -> str:
        """Accept any standard logging level name."""
        level = v.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"Unknown log level: {v}")
        return level

    @field_validator("log_file")
    @classmethod
    def create_log_dir(cls, v: Optional[Path]) -> Optional[Path]:
        """Ensure the log directory exists."""
        if v is None:
            return v
        v = Path(v).resolve()
        v.parent.mkdir(parents=True, exist_ok=True)
        return v


# Global settings instance
settings = Settings()
