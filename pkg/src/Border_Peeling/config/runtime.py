"""Environment-driven runtime settings."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from ..logging_utils import get_logger

LOGGER = get_logger("bp.config.runtime")


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        LOGGER.warning("invalid_env_value", name=name, value=raw, fallback=default)
        return default


@dataclass(slots=True)
class RuntimeSettings:
    """Worker and logging settings taken from ``BP_*`` variables."""

    threads: int = field(default_factory=lambda: _int_env("BP_THREADS", 1))
    log_level: str = field(default_factory=lambda: os.getenv("BP_LOG_LEVEL", "WARNING"))

    @classmethod
    def from_environment(cls) -> RuntimeSettings:
        settings = cls()
        LOGGER.debug("runtime_settings_loaded", threads=settings.threads)
        return settings

    def cap_workers(self, requested: int | None = None) -> int:
        """Clamp a requested worker count to ``BP_THREADS``."""

        if requested is None or requested <= 0:
            return self.threads
        return min(requested, self.threads)


__all__ = ["RuntimeSettings"]
