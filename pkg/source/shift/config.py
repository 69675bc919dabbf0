"""Runtime settings.

Values come from ``GRAPHSHIFT_<FIELD>`` environment variables, falling back to
the defaults below. Tests swap settings with :func:`override_settings`.
"""

import logging
import os
from contextlib import contextmanager
from typing import Iterator

from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

ENV_PREFIX = "GRAPHSHIFT_"


class Settings(BaseModel):
    """Tunable limits and tolerances."""
    model_config = ConfigDict(frozen=True)

    max_truncation_vertices: int = Field(default=5_000_000, gt=0)
    float_tol: float = Field(default=1e-10, gt=0)
    kernel_zero_tol: float = Field(default=1e-12, gt=0)
    root_tol: float = Field(default=1e-12, gt=0)
    root_grid_per_degree: int = Field(default=4, ge=1)
    root_grid_extra: int = Field(default=64, ge=1)
    bracket_slack: float = Field(default=1e-12, ge=0)
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None) -> "Settings":
        env = os.environ if environ is None else environ
        values = {
            name: env[ENV_PREFIX + name.upper()]
            for name in cls.model_fields
            if ENV_PREFIX + name.upper() in env
        }
        if values:
            logger.debug(f"Settings from environment: {sorted(values)}")
        return cls(**values)


_settings: Settings | None = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


@contextmanager
def override_settings(**changes) -> Iterator[Settings]:
    """Temporarily replace selected settings."""
    global _settings
    previous = get_settings()
    _settings = previous.model_copy(update=changes)
    try:
        yield _settings
    finally:
        _settings = previous
