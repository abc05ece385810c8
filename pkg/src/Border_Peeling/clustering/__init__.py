"""Core merging, label propagation and confidence ranking."""

from .confidence import confidence_ranking, rank_members
from .labels import ClusteringResult, propagate_labels
from .merge import ReachabilityGraph, merge_cores, merge_cores_bruteforce
from .pipeline import BorderPeelingClusterer

__all__ = [
    "BorderPeelingClusterer",
    "ClusteringResult",
    "ReachabilityGraph",
    "confidence_ranking",
    "merge_cores",
    "merge_cores_bruteforce",
    "propagate_labels",
    "rank_members",
]
