# gslice/core/config.py
import os
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from gslice.core.errors import ConfigError

load_dotenv()

# Degree caps for equalizer computations; GSL_MAX_DEGREE overrides both.
DEFAULT_SLICED_CAP = 8
DEFAULT_UNSLICED_CAP = 6


class Settings(BaseModel):
    sliced_cap: int = Field(DEFAULT_SLICED_CAP, ge=0, description="Highest degree for sliced equalizers")
    unsliced_cap: int = Field(DEFAULT_UNSLICED_CAP, ge=0, description="Highest degree for unsliced equalizers")
    log_level: str = Field("WARNING", pattern=r"^(DEBUG|INFO|WARNING|ERROR|CRITICAL)$")
    workers: int = Field(1, ge=1, le=64)

    def cap(self, sliced: bool) -> int:
        return self.sliced_cap if sliced else self.unsliced_cap


def _read_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Read settings from the environment (after .env is loaded)"""
    values = {}
    sliced = _read_int("GSL_SLICED_CAP")
    unsliced = _read_int("GSL_UNSLICED_CAP")
    override = _read_int("GSL_MAX_DEGREE")
    if sliced is not None:
        values["sliced_cap"] = sliced
    if unsliced is not None:
        values["unsliced_cap"] = unsliced
    if override is not None:
        values["sliced_cap"] = override
        values["unsliced_cap"] = override
    workers = _read_int("GSL_WORKERS")
    if workers is not None:
        values["workers"] = workers
    level = os.getenv("GSL_LOG_LEVEL")
    if level:
        values["log_level"] = level.upper()
    try:
        return Settings(**values)
    except ValidationError as e:
        raise ConfigError(f"invalid settings: {e.errors()[0]['msg']}")
