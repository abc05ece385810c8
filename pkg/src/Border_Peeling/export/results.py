"""Writers and readers for labels, result and trace artifacts."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from pydantic import ValidationError

from ..clustering.labels import ClusteringResult
from ..config.params import BorderPeelingParams
from ..dataset.points import ClusterLabels, PointSet
from ..errors import ArtifactIOError, DataQualityError
from ..logging_utils import get_logger
from ..metrics.external import ScoreReport
from ..peeling.state import PeelingTrace
from ..schemas.documents import ResultDocument
from ..schemas.tables import LabelsSchema
from ..schemas.utils import validate_frame, validate_with_schema

LOGGER = get_logger("bp.export.results")

LABELS_FILE = "labels.csv"
RESULT_FILE = "result.json"
TRACE_FILE = "trace.json"


def _dump_json(payload: dict[str, Any], path: Path) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ArtifactIOError(f"cannot write {path}", path=str(path), reason=str(exc)) from exc


def labels_frame(labels: ClusterLabels) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "point_id": np.arange(len(labels), dtype=np.int64),
            "label": labels.labels.astype(np.int64),
        }
    )


@validate_with_schema(LabelsSchema)
def _write_labels_frame(frame: pd.DataFrame, path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, lineterminator="\n")
    except OSError as exc:
        raise ArtifactIOError(f"cannot write {path}", path=str(path), reason=str(exc)) from exc


def write_labels(labels: ClusterLabels, path: Path) -> None:
    _write_labels_frame(labels_frame(labels), path)
    LOGGER.info("labels_written", path=str(path), rows=len(labels))


def read_labels(path: Path) -> ClusterLabels:
    try:
        frame = pd.read_csv(path)
    except (OSError, pd.errors.ParserError) as exc:
        raise ArtifactIOError(f"cannot read {path}", path=str(path), reason=str(exc)) from exc
    frame = validate_frame(LabelsSchema, frame)
    return ClusterLabels(frame.sort_values("point_id")["label"].to_numpy())


def build_result_document(
    result: ClusteringResult,
    points: PointSet,
    params: BorderPeelingParams,
    *,
    param_hash: str,
    source: str,
    score: ScoreReport | None = None,
) -> ResultDocument:
    """Assemble and validate the ``result.json`` payload."""

    peel = params.peeling
    payload = {
        "source": source,
        "n_points": points.n,
        "dim": points.d,
        "labels": result.labels.labels.tolist(),
        "n_clusters": result.n_clusters,
        "n_noise": result.n_noise,
        "core_ids": result.core_ids.tolist(),
        "confidence": [float(v) for v in result.confidence],
        "peeled_at": result.state.peeled_at.tolist(),
        "iterations": result.trace.n_iterations,
        "termination_reason": (
            result.trace.termination_reason.value if result.trace.termination_reason else None
        ),
        "params": {
            "k": peel.k,
            "C": peel.c,
            "peel_fraction": peel.peel_fraction,
            "lambda": result.trace.lambda_value,
            "max_iterations": peel.max_iterations,
            "termination_sensitivity": peel.termination_sensitivity,
            "min_cluster_size": result.min_cluster_size,
        },
        "param_hash": param_hash,
        "score": score.as_dict() if score is not None else None,
    }
    try:
        return ResultDocument.model_validate(payload)
    except ValidationError as exc:
        raise DataQualityError("result document failed validation", detail=str(exc)) from exc


def write_result(document: ResultDocument, path: Path) -> None:
    _dump_json(document.model_dump(mode="json", by_alias=True), path)
    LOGGER.info(
        "result_written", path=str(path), n_clusters=document.n_clusters, n_noise=document.n_noise
    )


def read_result(path: Path) -> ResultDocument:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ArtifactIOError(f"cannot read {path}", path=str(path), reason=str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise DataQualityError(f"{path} is not valid JSON", line=exc.lineno) from exc
    try:
        return ResultDocument.model_validate(payload)
    except ValidationError as exc:
        raise DataQualityError(f"{path} does not match the result schema", detail=str(exc)) from exc


def write_trace(trace: PeelingTrace, path: Path) -> None:
    _dump_json(trace.to_dict(), path)
    LOGGER.info("trace_written", path=str(path), iterations=trace.n_iterations)


def read_trace(path: Path) -> dict[str, Any]:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ArtifactIOError(f"cannot read {path}", path=str(path), reason=str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise DataQualityError(f"{path} is not valid JSON", line=exc.lineno) from exc
    if not isinstance(payload, dict) or "iterations" not in payload:
        raise DataQualityError(f"{path} is not a peeling trace")
    return payload


def write_table(frame: pd.DataFrame, path: Path, *, event: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, lineterminator="\n", float_format="%.10g")
    except OSError as exc:
        raise ArtifactIOError(f"cannot write {path}", path=str(path), reason=str(exc)) from exc
    LOGGER.info(event, path=str(path), rows=len(frame))


__all__ = [
    "LABELS_FILE",
    "RESULT_FILE",
    "TRACE_FILE",
    "build_result_document",
    "labels_frame",
    "read_labels",
    "read_result",
    "read_trace",
    "write_labels",
    "write_result",
    "write_table",
    "write_trace",
]
