"""Structured logging utilities with sanitisation and context management."""

from __future__ import annotations

import contextvars
import logging
import logging.handlers
import time
from collections.abc import Iterator, Mapping
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import numpy as np
import structlog
from structlog.typing import FilteringBoundLogger

__all__ = [
    "configure_logging",
    "get_logger",
    "log_duration",
    "run_context",
]


_RUN_ID: contextvars.ContextVar[str | None] = contextvars.ContextVar("run_id", default=None)
_MAX_LIST_ITEMS = 20


def configure_logging(level: str = "INFO", *, log_file: str | Path | None = None) -> None:
    """Configure structlog with JSON output and optional file logging."""

    numeric_level = getattr(logging, level.upper(), logging.INFO)
    handlers: list[logging.Handler] = []

    stream_handler = logging.StreamHandler()
    stream_handler.setFormatter(logging.Formatter("%(message)s"))
    handlers.append(stream_handler)

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            path, maxBytes=10 * 1024 * 1024, backupCount=5
        )
        file_handler.setFormatter(logging.Formatter("%(message)s"))
        handlers.append(file_handler)

    logging.basicConfig(level=numeric_level, handlers=handlers, force=True)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            _sanitise_event,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.add_log_level,
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer(),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str = "bp") -> FilteringBoundLogger:
    return structlog.get_logger(name)


@contextmanager
def run_context(run_id: str) -> Iterator[None]:
    """Attach ``run_id`` to every event emitted inside the block."""

    token = _RUN_ID.set(run_id)
    try:
        yield
    finally:
        _RUN_ID.reset(token)


@contextmanager
def log_duration(logger: FilteringBoundLogger, event: str, **context: Any) -> Iterator[None]:
    start = time.perf_counter()
    try:
        yield
    finally:
        duration = time.perf_counter() - start
        logger.info(event, duration_seconds=round(duration, 6), **context)


def _sanitise_event(
    _: FilteringBoundLogger,
    __: str,
    event_dict: Mapping[str, Any],
) -> Mapping[str, Any]:
    mutable = dict(event_dict)
    run_id = _RUN_ID.get()
    if run_id and "run_id" not in mutable:
        mutable["run_id"] = run_id
    for key, value in list(mutable.items()):
        mutable[key] = _to_native(value)
    return mutable


def _to_native(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)) and len(value) > _MAX_LIST_ITEMS:
        head = [_to_native(item) for item in value[:_MAX_LIST_ITEMS]]
        return [*head, f"... (+{len(value) - _MAX_LIST_ITEMS})"]
    if isinstance(value, (list, tuple)):
        return [_to_native(item) for item in value]
    return value
