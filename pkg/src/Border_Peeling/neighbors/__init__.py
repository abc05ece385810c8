"""Exact kNN, reverse-kNN and range queries over active point subsets."""

from .index import METRICS, Metric, NeighborIndex, build_index, get_metric
from .reverse import ReverseNeighborMap, reverse_knn

__all__ = [
    "METRICS",
    "Metric",
    "NeighborIndex",
    "ReverseNeighborMap",
    "build_index",
    "get_metric",
    "reverse_knn",
]
