"""Point sets, labelings, CSV ingestion and synthetic generators."""

from .generators import PRESETS, generate, make_rng, preset
from .io import load_csv, save_csv
from .points import NOISE, ClusterLabels, PointSet

__all__ = [
    "NOISE",
    "PRESETS",
    "ClusterLabels",
    "PointSet",
    "generate",
    "load_csv",
    "make_rng",
    "preset",
    "save_csv",
]
