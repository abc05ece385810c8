from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from ..errors import QueryError
from .labels import ClusteringResult


def rank_members(
    labels: ArrayLike, confidence: ArrayLike, cluster: int, top_m: int
) -> tuple[list[int], list[int]]:
    """Top and bottom ``top_m`` members of ``cluster`` by confidence, ties by id."""

    values = np.asarray(labels, dtype=np.int64)
    scores = np.asarray(confidence, dtype=float)
    if cluster < 0 or not np.any(values == cluster):
        raise QueryError(f"unknown cluster label {cluster}", cluster=int(cluster))
    if top_m < 0:
        raise QueryError("m must be non-negative", m=top_m)
    members = np.flatnonzero(values == cluster)
    member_scores = scores[members]
    count = min(top_m, members.size)
    descending = members[np.lexsort((members, -member_scores))][:count]
    ascending = members[np.lexsort((members, member_scores))][:count]
    return [int(i) for i in descending], [int(i) for i in ascending]


def confidence_ranking(
    result: ClusteringResult, cluster: int, top_m: int
) -> tuple[list[int], list[int]]:
    """Most and least confident members of a cluster by first-iteration influence."""

    return rank_members(result.labels.labels, result.confidence, cluster, top_m)


__all__ = ["confidence_ranking", "rank_members"]
