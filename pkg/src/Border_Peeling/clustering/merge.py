"""Reachability merging of core points."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.sparse import coo_array
from scipy.sparse.csgraph import connected_components

from ..config.params import NeighborConfig
from ..dataset.points import PointSet
from ..errors import DegenerateInputError, QueryError
from ..logging_utils import get_logger
from ..neighbors.index import build_index, get_metric

LOGGER = get_logger("bp.clustering.merge")


@dataclass(frozen=True, slots=True, eq=False)
class ReachabilityGraph:
    """Core points joined when ``d(i, j) <= max(l_i, l_j)``.

    ``edges`` holds each undirected edge once as ``(low id, high id)``;
    ``components[r]`` is the component of ``nodes[r]``, numbered in order of
    each component's smallest node id.
    """

    nodes: NDArray[np.int64]
    edges: NDArray[np.int64]
    components: NDArray[np.int64]

    @property
    def n_components(self) -> int:
        return int(self.components.max()) + 1 if self.components.size else 0

    def component_of(self, point_id: int) -> int:
        pos = int(np.searchsorted(self.nodes, point_id))
        if pos >= self.nodes.size or self.nodes[pos] != point_id:
            raise QueryError(f"point {point_id} is not a core point", point_id=int(point_id))
        return int(self.components[pos])

    def members(self, component: int) -> NDArray[np.int64]:
        return self.nodes[self.components == component]

    def partition(self) -> list[list[int]]:
        return [self.members(c).tolist() for c in range(self.n_components)]


def _components(size: int, rows: NDArray[np.int64], cols: NDArray[np.int64]) -> NDArray[np.int64]:
    graph = coo_array(
        (np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(size, size)
    ).tocsr()
    _, raw = connected_components(graph, directed=True, connection="weak")
    # renumber by first occurrence so component ids follow the smallest node id
    _, first = np.unique(raw, return_index=True)
    order = np.argsort(first, kind="stable")
    mapping = np.empty_like(order)
    mapping[order] = np.arange(order.size)
    return mapping[raw].astype(np.int64)


def _graph(
    nodes: NDArray[np.int64], rows: NDArray[np.int64], cols: NDArray[np.int64]
) -> ReachabilityGraph:
    low, high = np.minimum(rows, cols), np.maximum(rows, cols)
    if low.size:
        pairs = np.unique(np.stack([low, high], axis=1), axis=0)
    else:
        pairs = np.empty((0, 2), dtype=np.int64)
    components = _components(nodes.size, rows, cols)
    return ReachabilityGraph(
        nodes=nodes,
        edges=nodes[pairs].astype(np.int64).reshape(-1, 2),
        components=components,
    )


def _prepare(
    cores: ArrayLike, l_final: ArrayLike, points: PointSet
) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
    nodes = np.unique(np.asarray(cores, dtype=np.int64))
    if nodes.size == 0:
        raise DegenerateInputError("at least one core point is required")
    thresholds = np.asarray(l_final, dtype=float)
    if thresholds.shape[0] != points.n:
        raise QueryError("l_final must hold one threshold per point")
    return nodes, thresholds[nodes]


def merge_cores(
    cores: ArrayLike,
    l_final: ArrayLike,
    points: PointSet,
    neighbors: NeighborConfig | None = None,
    *,
    workers: int = 1,
) -> ReachabilityGraph:
    """Connected components of the core points under the max-threshold edge rule.

    A range query of radius ``l_i`` around every core finds each j with
    ``d <= l_i``; symmetrising those directed hits yields exactly the pairs
    with ``d <= max(l_i, l_j)``.
    """

    nodes, radii = _prepare(cores, l_final, points)
    cfg = neighbors or NeighborConfig()
    mask = np.zeros(points.n, dtype=bool)
    mask[nodes] = True
    index = build_index(
        points,
        mask,
        metric=cfg.metric,
        backend=cfg.backend,
        leafsize=cfg.leafsize,
        brute_max_dim=cfg.brute_max_dim,
        workers=workers,
        min_active=1,
    )
    hits = index.radius_neighbors(radii)
    rows = np.repeat(np.arange(nodes.size), [h.size for h in hits]).astype(np.int64)
    cols = np.concatenate(hits).astype(np.int64) if hits else np.empty(0, dtype=np.int64)
    graph = _graph(nodes, rows, cols)
    LOGGER.info(
        "cores_merged",
        cores=int(nodes.size),
        edges=int(graph.edges.shape[0]),
        components=graph.n_components,
    )
    return graph


def merge_cores_bruteforce(
    cores: ArrayLike, l_final: ArrayLike, points: PointSet, metric: str = "euclidean"
) -> ReachabilityGraph:
    """All-pairs reference for :func:`merge_cores`."""

    nodes, radii = _prepare(cores, l_final, points)
    spec = get_metric(metric)
    coords = points.points[nodes]
    distances = spec.distance(spec.key(coords[:, np.newaxis, :] - coords[np.newaxis, :, :]))
    reach = distances <= np.maximum(radii[:, np.newaxis], radii[np.newaxis, :])
    np.fill_diagonal(reach, False)
    rows, cols = np.nonzero(reach)
    return _graph(nodes, rows.astype(np.int64), cols.astype(np.int64))


__all__ = ["ReachabilityGraph", "merge_cores", "merge_cores_bruteforce"]
