"""End-to-end clustering: estimate lambda, peel, merge cores, propagate labels."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from ..config.params import BorderPeelingParams
from ..dataset.points import ClusterLabels, PointSet
from ..errors import ComputationError
from ..logging_utils import get_logger, log_duration
from ..peeling.engine import run_peeling
from .labels import ClusteringResult, propagate_labels
from .merge import merge_cores

LOGGER = get_logger("bp.clustering.pipeline")


class BorderPeelingClusterer:
    """Fit border-peeling clusters on a point set.

    ``workers`` only affects kd-tree batch queries; results do not depend on it.
    """

    def __init__(self, params: BorderPeelingParams | None = None, *, workers: int = 1) -> None:
        self.params = params or BorderPeelingParams()
        self.workers = max(1, int(workers))
        self.result_: ClusteringResult | None = None

    @property
    def labels_(self) -> ClusterLabels:
        if self.result_ is None:
            raise ComputationError("clusterer has not been fitted")
        return self.result_.labels

    def fit(self, points: PointSet | ArrayLike) -> ClusteringResult:
        data = points if isinstance(points, PointSet) else PointSet(np.asarray(points, dtype=float))
        peel_params = self.params.peeling
        neighbors = self.params.neighbors
        min_size = self.params.clustering.resolve_min_cluster_size(data.n)
        with log_duration(LOGGER, "clustering_completed", n_points=data.n):
            state, trace = run_peeling(data, peel_params, neighbors, workers=self.workers)
            graph = merge_cores(state.core_ids, state.l, data, neighbors, workers=self.workers)
            result = propagate_labels(graph, state, min_size, trace)
        LOGGER.info(
            "clustering_summary",
            n_clusters=result.n_clusters,
            n_noise=result.n_noise,
            iterations=trace.n_iterations,
            termination=trace.termination_reason.value if trace.termination_reason else None,
        )
        self.result_ = result
        return result

    def fit_predict(self, points: PointSet | ArrayLike) -> ClusterLabels:
        return self.fit(points).labels


__all__ = ["BorderPeelingClusterer"]
