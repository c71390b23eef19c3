from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field, field_validator
from typing import Optional
from pathlib import Path
import logging


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="KNOT_REWRITER_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Variant table file; the packaged default is used when unset
    variant_table: Optional[Path] = Field(default=None)

    # Default seed for the random subcommand
    seed: int = 0

    log_level: str = "WARNING"

    # Default for `replay --strict`
    strict_replay: bool = False

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"Unknown log level: {value}")
        return level

    def __init__(self, **kwargs):
        # Prefer a .env file in the current working directory
        cwd_env = Path.cwd() / ".env"

        if cwd_env.exists():
            super().__init__(_env_file=str(cwd_env), **kwargs)
        else:
            super().__init__(_env_file=None, **kwargs)


settings = Settings()
