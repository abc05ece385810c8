"""Desk-scale validation harnesses."""

from .lemma import DEFAULT_TOLERANCE, LemmaReport, validate_lemma
from .sweep import SweepReport, resolve_lambda, run_sweep

__all__ = [
    "DEFAULT_TOLERANCE",
    "LemmaReport",
    "SweepReport",
    "resolve_lambda",
    "run_sweep",
    "validate_lemma",
]
