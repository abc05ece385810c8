"""Artifact schemas."""

from .documents import ResultDocument, RunParameters, ScoreDocument
from .tables import LabelsSchema, LemmaReportSchema, SweepSchema
from .utils import validate_frame, validate_with_schema

__all__ = [
    "LabelsSchema",
    "LemmaReportSchema",
    "ResultDocument",
    "RunParameters",
    "ScoreDocument",
    "SweepSchema",
    "validate_frame",
    "validate_with_schema",
]
