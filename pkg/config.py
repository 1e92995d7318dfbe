"""
Configuration management using pydantic-settings
"""

import os
import sys
from pathlib import Path
from typing import Optional

from loguru import logger
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings loaded from RIS_EM_* environment variables and .env"""

    # Parallelism
    threads: int = Field(
        default=0,
        description="Worker cap for Monte Carlo batches (0 = one per CPU core)",
    )

    # Logging configuration
    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
    )

    log_file: Optional[str] = Field(
        default=None,
        description="Optional log file path. If not set, logs to stderr only",
    )

    # Experiment defaults
    out_dir: str = Field(
        default="results",
        description="Directory receiving report.json and curve CSV files",
    )

    default_seed: int = Field(
        default=2022,
        description="Seed used when an experiment spec does not set one",
    )

    em_epsilon: float = Field(
        default=1e-3,
        description="Relative tolerance of the EM stop rule",
    )

    em_max_iter: int = Field(
        default=500,
        description="Iteration cap of the EM loop",
    )

    # Test configuration
    test_mode: bool = Field(
        default=False,
        description="Running in test mode (logging is not configured on import)",
    )

    model_config = SettingsConfigDict(
        env_prefix="RIS_EM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @field_validator("threads")
    @classmethod
    def validate_threads(cls, v: int) -> int:
        """Validate worker cap is not negative"""
        if v < 0:
            raise ValueError("RIS_EM_THREADS must be >= 0 (0 = auto)")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level"""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        v_upper = v.upper()
        if v_upper not in valid_levels:
            raise ValueError(f"Invalid log level: {v}. Must be one of: {valid_levels}")
        return v_upper

    @field_validator("default_seed")
    @classmethod
    def validate_seed(cls, v: int) -> int:
        if not 0 <= v < 2**64:
            raise ValueError("Seed must be an unsigned 64-bit integer")
        return v

    @field_validator("em_epsilon")
    @classmethod
    def validate_epsilon(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("EM tolerance must be positive")
        return v

    @field_validator("em_max_iter")
    @classmethod
    def validate_max_iter(cls, v: int) -> int:
        if v < 0:
            raise ValueError("EM iteration cap must be >= 0")
        return v

    def resolved_threads(self) -> int:
        """Worker count with 0 mapped to the number of CPU cores"""
        return self.threads or (os.cpu_count() or 1)

    def get_out_dir(self) -> Path:
        return Path(self.out_dir)

    def setup_logging(
        self, run_id: Optional[str] = None, level: Optional[str] = None
    ) -> None:
        """Setup structured logging with loguru"""
        logger.remove()

        if run_id:
            log_format = (
                "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
                "<level>{level: <8}</level> | "
                f"<cyan>run:{run_id}</cyan> | "
                "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - "
                "<level>{message}</level>"
            )
        else:
            log_format = (
                "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
                "<level>{level: <8}</level> | "
                "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - "
                "<level>{message}</level>"
            )

        effective_level = (level or self.log_level).upper()

        logger.add(
            sink=lambda msg: print(msg, end="", file=sys.stderr),
            format=log_format,
            level=effective_level,
            colorize=True,
        )

        if self.log_file:
            log_file_path = Path(self.log_file)
            log_file_path.parent.mkdir(parents=True, exist_ok=True)

            logger.add(
                sink=str(log_file_path),
                format=log_format,
                level=effective_level,
                rotation="10 MB",
                retention="10 days",
                compression="gz",
            )


# Global settings instance
try:
    settings = Settings()
except Exception as e:
    print(f"❌ Configuration Error: {e}")
    print("\nPlease check your environment variables:")
    print("- RIS_EM_THREADS: Monte Carlo worker cap, 0 = auto (optional)")
    print("- RIS_EM_LOG_LEVEL: DEBUG, INFO, WARNING, ERROR, CRITICAL (optional)")
    print("- RIS_EM_OUT_DIR: Output directory for reports (optional)")
    print("- RIS_EM_DEFAULT_SEED: Unsigned 64-bit seed (optional)")
    print("\nExample .env file:")
    print("RIS_EM_THREADS=4")
    print("RIS_EM_LOG_LEVEL=INFO")
    print("RIS_EM_OUT_DIR=./results")
    raise SystemExit(1)


def get_settings() -> Settings:
    """Get global settings instance"""
    return settings


def setup_logging(run_id: Optional[str] = None, level: Optional[str] = None) -> None:
    """Setup logging using global settings"""
    settings.setup_logging(run_id, level)


# Setup logging on import
if not settings.test_mode:
    setup_logging()
