"""Border-peeling clustering: iterative density-based border removal and core merging."""

from __future__ import annotations

from .clustering.labels import ClusteringResult
from .clustering.pipeline import BorderPeelingClusterer
from .config.loader import compute_param_hash, load_and_document, load_params
from .config.params import BorderPeelingParams
from .dataset.points import NOISE, ClusterLabels, PointSet
from .logging_utils import configure_logging, get_logger
from .metrics.external import adjusted_mutual_information, adjusted_rand_index

__all__ = [
    "NOISE",
    "BorderPeelingClusterer",
    "BorderPeelingParams",
    "ClusterLabels",
    "ClusteringResult",
    "PointSet",
    "adjusted_mutual_information",
    "adjusted_rand_index",
    "compute_param_hash",
    "configure_logging",
    "get_logger",
    "load_and_document",
    "load_params",
]
