"""
Application settings and configuration management.
"""

from pathlib import Path

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Ambient settings with environment variable support.

    Only logging and output locations live here; numerical parameters are
    passed explicitly on the command line.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="BELLPARITY_",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = Field("INFO", description="Root log level")
    log_format: str = Field("json", description="File log format (json or simple)")
    log_path: Path = Field(Path("./data/logs"), description="Directory for log files")
    logging_config_path: Path = Field(
        Path(__file__).resolve().parent / "logging_config.yaml",
        description="dictConfig YAML document",
    )

    # Output
    output_path: Path = Field(Path("."), description="Base directory for relative --out paths")

    @field_validator("log_level")
    @classmethod
    def normalize_level(cls, v: str) -> str:
        """Upper-case and check the log level name."""
        v = v.upper().strip()
        if v not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Invalid log level: {v}")
        return v

    @field_validator("log_format")
    @classmethod
    def normalize_format(cls, v: str) -> str:
        v = v.lower().strip()
        if v not in {"json", "simple"}:
            raise ValueError("log_format must be 'json' or 'simple'")
        return v


# Global settings instance
settings = Settings()
