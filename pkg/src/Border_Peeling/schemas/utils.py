"""Schema validation helpers for artifact writers."""

from __future__ import annotations

from collections.abc import Callable
from functools import wraps
from typing import Any, TypeVar

import pandas as pd
import pandera as pa
from pandera.errors import SchemaError, SchemaErrors

from ..errors import DataQualityError

T = TypeVar("T")


def validate_frame(schema: pa.DataFrameSchema, frame: pd.DataFrame) -> pd.DataFrame:
    """Validate ``frame`` and re-raise schema failures as data errors."""

    try:
        return schema.validate(frame)
    except (SchemaError, SchemaErrors) as exc:
        raise DataQualityError(
            f"{schema.name or 'frame'} failed validation", detail=str(exc).splitlines()[0]
        ) from exc


def validate_with_schema(
    schema: pa.DataFrameSchema,
) -> Callable[[Callable[..., T]], Callable[..., T]]:
    """Decorator that validates the first DataFrame argument against a schema."""

    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> T:
            if not args or not isinstance(args[0], pd.DataFrame):
                raise TypeError("validate_with_schema expects the DataFrame as the first argument")
            validated = validate_frame(schema, args[0])
            return func(validated, *args[1:], **kwargs)

        return wrapper

    return decorator


__all__ = ["validate_frame", "validate_with_schema"]
