import logging
from typing import Any

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    PROJECT_NAME: str = "owenset"

    # Brute-force core checks enumerate 2^n coalitions
    MAX_AGENTS: int = 16

    # b-matching duplication reduction guard on the sum of b values
    DUPLICATION_BOUND: int = 64

    # Constraint generation: max_rounds = factor * (variables + constraints)
    SEPARATION_ROUND_FACTOR: int = 10

    # Reporting
    DECIMAL_PLACES: int = 6
    VERIFY_SAMPLES: int = 50

    LOG_LEVEL: str = "WARNING"

    @field_validator("LOG_LEVEL", mode="before")
    def normalize_log_level(cls, v: Any) -> str:
        level = str(v).upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"Unknown log level: {v}")
        return level

    model_config = SettingsConfigDict(
        env_file=".env", env_prefix="OWENSET_", case_sensitive=True, extra="ignore"
    )


settings = Settings()
