"""CSV ingestion and export for point sets.

Format: comma separated, an optional single header row, one point per row and
an optional integer label column.
"""

from __future__ import annotations

from io import StringIO
from pathlib import Path

import numpy as np
import pandas as pd

from ..errors import ArtifactIOError, DataQualityError, EmptyInputError, ParseError
from ..logging_utils import get_logger
from .points import PointSet

LOGGER = get_logger("bp.dataset.io")

FLOAT_FORMAT = "%.17g"
_NAN_TOKENS = {"nan", "+nan", "-nan"}


def _read_raw(path: Path, has_header: bool) -> pd.DataFrame:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise ArtifactIOError(f"File not found: {path}", path=str(path)) from exc
    except OSError as exc:
        raise ArtifactIOError(f"Cannot read {path}: {exc}", path=str(path)) from exc
    if not text.strip():
        raise EmptyInputError("input file is empty", path=str(path))
    try:
        frame = pd.read_csv(
            StringIO(text),
            header=0 if has_header else None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
        )
    except pd.errors.EmptyDataError as exc:
        raise EmptyInputError("input file is empty", path=str(path)) from exc
    except pd.errors.ParserError as exc:
        line = _line_from_parser_error(str(exc))
        raise ParseError("rows have non-uniform width", line=line, path=str(path)) from exc
    if frame.empty:
        raise EmptyInputError("input file has no data rows", path=str(path))
    return frame


def _line_from_parser_error(message: str) -> int:
    # pandas reports "Expected 2 fields in line 3, saw 3"
    marker = "line "
    if marker in message:
        tail = message.split(marker, 1)[1]
        digits = "".join(ch for ch in tail.split(",", 1)[0] if ch.isdigit())
        if digits:
            return int(digits)
    return 0


def _exact_values(
    coerced: np.ndarray, tokens: np.ndarray, first_data_line: int, path: Path
) -> np.ndarray:
    """Re-parse the finite cells with a correctly rounded conversion.

    ``pd.to_numeric`` may land one ulp off on 17-digit input, so it only
    screens tokens; the stored values come from ``float``.
    """

    values = coerced.copy()
    finite = np.isfinite(coerced)
    try:
        values[finite] = tokens[finite].astype(float)
    except ValueError as exc:
        row = int(np.argwhere(finite)[0][0])
        raise ParseError(
            f"cannot parse row as numbers: {exc}", line=row + first_data_line, path=str(path)
        ) from exc
    return values


def load_csv(
    path: str | Path,
    *,
    has_header: bool = False,
    label_column: int | None = None,
) -> PointSet:
    """Parse a CSV file into a :class:`PointSet`.

    ``label_column`` is a 0-based column index whose integer values become the
    ground truth; all other columns must parse as finite reals.
    """

    path = Path(path)
    frame = _read_raw(path, has_header)
    first_data_line = 2 if has_header else 1
    n_columns = frame.shape[1]
    if label_column is not None and not -n_columns <= label_column < n_columns:
        raise DataQualityError(
            f"label column {label_column} out of range for {n_columns} columns", path=str(path)
        )

    # short rows come back as NaN; treat them as empty tokens
    filled = frame.fillna("")
    tokens = filled.apply(lambda column: column.astype(str).str.strip())
    numeric = tokens.apply(lambda column: pd.to_numeric(column, errors="coerce"))
    values = numeric.to_numpy(dtype=float)
    stripped = tokens.to_numpy(dtype=object)

    is_nan_token = tokens.apply(lambda column: column.str.lower().isin(_NAN_TOKENS)).to_numpy()
    unparsable = np.isnan(values) & ~is_nan_token
    if np.any(unparsable):
        row, col = (int(item) for item in np.argwhere(unparsable)[0])
        token = stripped[row, col]
        detail = "missing value" if token == "" else f"cannot parse {token!r} as a number"
        raise ParseError(detail, line=row + first_data_line, column=col, path=str(path))
    values = _exact_values(values, stripped, first_data_line, path)

    truth = None
    if label_column is not None:
        label_index = label_column % n_columns
        labels = values[:, label_index]
        if not np.all(np.isfinite(labels)) or not np.all(labels == np.round(labels)):
            row = int(np.flatnonzero(~np.isfinite(labels) | (labels != np.round(labels)))[0])
            raise ParseError("label must be an integer", line=row + first_data_line, path=str(path))
        truth = labels.astype(np.int64)
        values = np.delete(values, label_index, axis=1)

    if values.shape[1] == 0:
        raise DataQualityError("no coordinate columns present", path=str(path))
    if not np.all(np.isfinite(values)):
        row = int(np.argwhere(~np.isfinite(values))[0][0])
        raise DataQualityError(
            f"non-finite value at line {row + first_data_line}",
            line=row + first_data_line,
            path=str(path),
        )

    points = PointSet(values, truth)
    LOGGER.info("csv_loaded", path=str(path), n=points.n, d=points.d, labelled=points.has_labels)
    return points


def save_csv(points: PointSet, path: str | Path, *, header: bool = True) -> Path:
    """Write ``points`` with 17 significant digits; labels go last when present."""

    path = Path(path)
    columns = {f"x{idx}": points.points[:, idx] for idx in range(points.d)}
    frame = pd.DataFrame(columns)
    if points.ground_truth is not None:
        frame["label"] = points.ground_truth
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, header=header, float_format=FLOAT_FORMAT)
    except OSError as exc:
        raise ArtifactIOError(f"Cannot write {path}: {exc}", path=str(path)) from exc
    LOGGER.info("csv_written", path=str(path), rows=len(frame))
    return path


__all__ = ["FLOAT_FORMAT", "load_csv", "save_csv"]
