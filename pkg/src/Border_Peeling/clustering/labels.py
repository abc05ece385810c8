"""Label propagation along association chains."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..dataset.points import NOISE, ClusterLabels
from ..errors import ComputationError, ConfigurationError
from ..logging_utils import get_logger
from ..peeling.state import NOT_PEELED, UNASSIGNED, PeelingTrace, PeelState
from .merge import ReachabilityGraph

LOGGER = get_logger("bp.clustering.labels")

_UNRESOLVED = -2


@dataclass(frozen=True, slots=True, eq=False)
class ClusteringResult:
    """Final labels plus everything needed to explain them.

    ``confidence`` is the first-iteration density influence of every point.
    """

    labels: ClusterLabels
    core_ids: NDArray[np.int64]
    confidence: NDArray[np.float64]
    trace: PeelingTrace
    state: PeelState
    graph: ReachabilityGraph
    min_cluster_size: int

    @property
    def n_clusters(self) -> int:
        return self.labels.n_clusters

    @property
    def n_noise(self) -> int:
        return self.labels.n_noise


def _follow_chains(graph: ReachabilityGraph, state: PeelState) -> NDArray[np.int64]:
    raw = np.full(state.n, _UNRESOLVED, dtype=np.int64)
    raw[graph.nodes] = graph.components
    peeled = state.peeled_ids
    # latest peel first: every association target is a core or was peeled later
    order = peeled[np.lexsort((peeled, -state.peeled_at[peeled]))]
    for point_id in order:
        target = int(state.rho[point_id])
        if target == UNASSIGNED:
            raw[point_id] = NOISE
            continue
        target_peel = int(state.peeled_at[target])
        if target_peel != NOT_PEELED and target_peel <= state.peeled_at[point_id]:
            raise ComputationError(
                "association chain is not acyclic",
                point_id=int(point_id),
                target=target,
            )
        if raw[target] == _UNRESOLVED:
            raise ComputationError(
                "association target has no label", point_id=int(point_id), target=target
            )
        raw[point_id] = raw[target]
    if np.any(raw == _UNRESOLVED):
        missing = np.flatnonzero(raw == _UNRESOLVED)
        raise ComputationError("points left without a label", point_ids=missing.tolist())
    return raw


def _filter_and_compact(raw: NDArray[np.int64], min_cluster_size: int) -> NDArray[np.int64]:
    labels = raw.copy()
    clustered = labels != NOISE
    values, counts = np.unique(labels[clustered], return_counts=True)
    small = values[counts < min_cluster_size]
    labels[np.isin(labels, small)] = NOISE
    clustered = labels != NOISE
    if not np.any(clustered):
        return labels
    # compact in order of each cluster's smallest member id
    ids = np.flatnonzero(clustered)
    uniques, first = np.unique(labels[ids], return_index=True)
    rank = np.empty(uniques.size, dtype=np.int64)
    rank[np.argsort(ids[first], kind="stable")] = np.arange(uniques.size)
    labels[ids] = rank[np.searchsorted(uniques, labels[ids])]
    return labels


def propagate_labels(
    graph: ReachabilityGraph,
    state: PeelState,
    min_cluster_size: int,
    trace: PeelingTrace | None = None,
) -> ClusteringResult:
    """Carry core component labels outward along the association links.

    Peeled points whose chain hits an unassigned link become noise, as do the
    members of clusters smaller than ``min_cluster_size``.
    """

    if min_cluster_size < 1:
        raise ConfigurationError("min_cluster_size must be positive", value=min_cluster_size)
    raw = _follow_chains(graph, state)
    labels = ClusterLabels(_filter_and_compact(raw, min_cluster_size))
    LOGGER.info(
        "labels_propagated",
        clusters=labels.n_clusters,
        noise=labels.n_noise,
        dead_ends=int(np.count_nonzero(raw == NOISE)),
        min_cluster_size=min_cluster_size,
    )
    return ClusteringResult(
        labels=labels,
        core_ids=graph.nodes,
        confidence=state.b0.copy(),
        trace=trace if trace is not None else PeelingTrace(lambda_value=state.lambda_value),
        state=state,
        graph=graph,
        min_cluster_size=min_cluster_size,
    )


__all__ = ["ClusteringResult", "propagate_labels"]
