"""Exact k-nearest-neighbour queries over an active subset of a point set.

Two backends answer the same queries: a ``scipy.spatial.cKDTree`` index and a
brute-force scan. Both rank candidates by the same distance key computed in
numpy and break ties by ascending point id, so their outputs are identical.
Neighbour lists never contain the query point itself.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from scipy.spatial import cKDTree

from ..dataset.points import PointSet
from ..errors import ConfigurationError, DegenerateInputError, QueryError
from ..logging_utils import get_logger

LOGGER = get_logger("bp.neighbors.index")

Backend = Literal["auto", "kdtree", "brute"]

_BRUTE_BUDGET = 4_000_000
_SLACK = 1e-9


@dataclass(frozen=True, slots=True)
class Metric:
    """Distance definition.

    ``key`` is the ranking quantity computed from coordinate differences
    (squared distance for euclidean); ``distance`` maps keys to true distances.
    """

    name: str
    p: float
    key: Callable[[NDArray[np.float64]], NDArray[np.float64]]
    distance: Callable[[NDArray[np.float64]], NDArray[np.float64]]

    def squared(self, keys: NDArray[np.float64]) -> NDArray[np.float64]:
        """Squared true distances for the given keys."""

        if self.name == "euclidean":
            return np.asarray(keys, dtype=float)
        return np.square(self.distance(np.asarray(keys, dtype=float)))


def _sq_key(diff: NDArray[np.float64]) -> NDArray[np.float64]:
    return np.sum(diff * diff, axis=-1)


METRICS: dict[str, Metric] = {
    "euclidean": Metric("euclidean", 2.0, _sq_key, np.sqrt),
    "manhattan": Metric(
        "manhattan", 1.0, lambda diff: np.sum(np.abs(diff), axis=-1), np.asarray
    ),
    "chebyshev": Metric(
        "chebyshev", np.inf, lambda diff: np.max(np.abs(diff), axis=-1), np.asarray
    ),
}


def get_metric(name: str) -> Metric:
    try:
        return METRICS[name]
    except KeyError as exc:
        raise ConfigurationError(
            f"Unknown metric {name!r}; expected one of {sorted(METRICS)}"
        ) from exc


class NeighborIndex:
    """Immutable neighbour index over the active points of a :class:`PointSet`.

    ``ids`` holds the active global point ids in ascending order; batch outputs
    are aligned with it.
    """

    def __init__(
        self,
        points: NDArray[np.float64],
        ids: NDArray[np.int64],
        *,
        metric: Metric,
        backend: Literal["kdtree", "brute"],
        leafsize: int = 16,
        workers: int = 1,
    ) -> None:
        self.ids = np.asarray(ids, dtype=np.int64)
        self.ids.setflags(write=False)
        self.coords = np.ascontiguousarray(points[self.ids], dtype=float)
        self.coords.setflags(write=False)
        self.metric = metric
        self.backend = backend
        self.workers = max(1, int(workers))
        self._position = np.full(points.shape[0], -1, dtype=np.int64)
        self._position[self.ids] = np.arange(self.ids.shape[0])
        self._tree = cKDTree(self.coords, leafsize=leafsize) if backend == "kdtree" else None

    @property
    def size(self) -> int:
        return int(self.ids.shape[0])

    @property
    def dim(self) -> int:
        return int(self.coords.shape[1])

    def position(self, point_id: int) -> int:
        if not 0 <= point_id < self._position.shape[0] or self._position[point_id] < 0:
            raise QueryError(f"point {point_id} is not active", point_id=int(point_id))
        return int(self._position[point_id])

    def is_active(self, point_id: int) -> bool:
        return 0 <= point_id < self._position.shape[0] and self._position[point_id] >= 0

    # kNN ---------------------------------------------------------------

    def knn(self, point_id: int, k: int) -> list[tuple[int, float]]:
        """The ``min(k, size - 1)`` nearest active neighbours of ``point_id``."""

        if k < 1:
            raise QueryError("k must be positive", k=k)
        pos = self.position(point_id)
        positions, keys = self._knn(self.coords[[pos]], np.array([pos]), min(k, self.size - 1))
        distances = self.metric.distance(keys[0])
        return [
            (int(self.ids[p]), float(dist)) for p, dist in zip(positions[0], distances, strict=True)
        ]

    def kneighbors(self, k: int) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
        """Batch kNN for every active point.

        Returns ``(positions, keys)`` of shape ``(size, min(k, size - 1))``;
        positions index into :attr:`ids`, keys are the metric's ranking values.
        """

        if k < 1:
            raise QueryError("k must be positive", k=k)
        rows = np.arange(self.size)
        return self._knn(self.coords, rows, min(k, self.size - 1))

    def query_knn(
        self, queries: NDArray[np.float64], k: int
    ) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
        """kNN of arbitrary coordinates among the active points.

        Nothing is excluded, so ``min(k, size)`` neighbours are returned per row.
        """

        if k < 1:
            raise QueryError("k must be positive", k=k)
        centers = np.asarray(queries, dtype=float).reshape(-1, self.dim)
        excludes = np.full(centers.shape[0], -1, dtype=np.int64)
        return self._knn(centers, excludes, min(k, self.size))

    def _knn(
        self, centers: NDArray[np.float64], excludes: NDArray[np.int64], k: int
    ) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
        if k <= 0:
            empty = np.empty((centers.shape[0], 0))
            return empty.astype(np.int64), empty
        if self._tree is None:
            return self._brute_knn(centers, excludes, k)
        return self._tree_knn(centers, excludes, k)

    def _rank(
        self, center: NDArray[np.float64], exclude: int, candidates: NDArray[np.int64], k: int
    ) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
        candidates = candidates[candidates != exclude]
        keys = self.metric.key(self.coords[candidates] - center)
        order = np.lexsort((candidates, keys))[:k]
        return candidates[order], keys[order]

    def _brute_knn(
        self, centers: NDArray[np.float64], excludes: NDArray[np.int64], k: int
    ) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
        count = centers.shape[0]
        out_pos = np.empty((count, k), dtype=np.int64)
        out_key = np.empty((count, k), dtype=float)
        columns = np.arange(self.size)
        step = max(1, _BRUTE_BUDGET // (self.size * self.dim))
        for start in range(0, count, step):
            chunk = centers[start : start + step]
            skip = excludes[start : start + step]
            keys = self.metric.key(self.coords[np.newaxis, :, :] - chunk[:, np.newaxis, :])
            own = np.flatnonzero(skip >= 0)
            keys[own, skip[own]] = np.inf
            tie = np.broadcast_to(columns, keys.shape)
            order = np.lexsort((tie, keys), axis=-1)[:, :k]
            out_pos[start : start + chunk.shape[0]] = order
            out_key[start : start + chunk.shape[0]] = np.take_along_axis(keys, order, axis=-1)
        return out_pos, out_key

    def _tree_knn(
        self, centers: NDArray[np.float64], excludes: NDArray[np.int64], k: int
    ) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
        assert self._tree is not None
        query = min(k + 2, self.size)
        _, raw = self._tree.query(centers, k=query, p=self.metric.p, workers=self.workers)
        raw = np.asarray(raw, dtype=np.int64).reshape(centers.shape[0], query)
        out_pos = np.empty((centers.shape[0], k), dtype=np.int64)
        out_key = np.empty((centers.shape[0], k), dtype=float)
        for slot in range(centers.shape[0]):
            center, exclude = centers[slot], int(excludes[slot])
            candidates = raw[slot]
            if query < self.size and not self._settled(center, exclude, candidates, k):
                candidates = self._ball_candidates(center, candidates, k)
            positions, keys = self._rank(center, exclude, candidates, k)
            out_pos[slot] = positions
            out_key[slot] = keys
        return out_pos, out_key

    def _settled(
        self, center: NDArray[np.float64], exclude: int, candidates: NDArray[np.int64], k: int
    ) -> bool:
        """True when the k-th neighbour is strictly closer than every point left out."""

        if exclude >= 0 and exclude not in candidates:
            return False
        others = candidates[candidates != exclude]
        keys = np.sort(self.metric.key(self.coords[others] - center))
        if keys.shape[0] <= k:
            return False
        kth, nxt = keys[k - 1], keys[k]
        return bool(nxt - kth > _SLACK * nxt)

    def _ball_candidates(
        self, center: NDArray[np.float64], candidates: NDArray[np.int64], k: int
    ) -> NDArray[np.int64]:
        assert self._tree is not None
        keys = np.sort(self.metric.key(self.coords[candidates] - center))
        radius = float(self.metric.distance(np.asarray(keys[min(k, keys.shape[0] - 1)])))
        radius = radius * (1.0 + 1e-6) + 1e-12
        ball = self._tree.query_ball_point(center, radius, p=self.metric.p)
        return np.asarray(sorted(ball), dtype=np.int64)

    # range queries -----------------------------------------------------

    def query_radius(
        self,
        point_id: int | None = None,
        radius: float = 0.0,
        *,
        point: NDArray[np.float64] | None = None,
    ) -> list[tuple[int, float]]:
        """Active points within ``radius`` (inclusive), sorted by distance then id.

        Pass an active ``point_id`` (excluded from its own result) or explicit
        coordinates via ``point``.
        """

        if (point_id is None) == (point is None):
            raise QueryError("provide exactly one of point_id or point")
        if radius < 0:
            raise QueryError("radius must be non-negative", radius=radius)
        exclude = -1
        if point_id is not None:
            exclude = self.position(point_id)
            center = self.coords[exclude]
        else:
            center = np.asarray(point, dtype=float).reshape(-1)
        positions, distances = self._radius_positions(center, radius, exclude)
        return [
            (int(self.ids[p]), float(dist)) for p, dist in zip(positions, distances, strict=True)
        ]

    def _radius_positions(
        self, center: NDArray[np.float64], radius: float, exclude: int
    ) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
        if self._tree is not None:
            padded = radius * (1.0 + 1e-6) + 1e-12
            candidates = np.asarray(
                sorted(self._tree.query_ball_point(center, padded, p=self.metric.p)),
                dtype=np.int64,
            )
        else:
            candidates = np.arange(self.size)
        candidates = candidates[candidates != exclude]
        if candidates.shape[0] == 0:
            return candidates, np.empty(0)
        keys = self.metric.key(self.coords[candidates] - center)
        distances = self.metric.distance(keys)
        keep = distances <= radius
        candidates, keys, distances = candidates[keep], keys[keep], distances[keep]
        order = np.lexsort((candidates, keys))
        return candidates[order], distances[order]

    def radius_neighbors(
        self, radii: NDArray[np.float64]
    ) -> list[NDArray[np.int64]]:
        """Per-active-point range query (positions, self excluded) with per-point radius."""

        radii = np.asarray(radii, dtype=float)
        if radii.shape[0] != self.size:
            raise QueryError("one radius per active point is required")
        return [
            self._radius_positions(self.coords[row], float(radii[row]), row)[0]
            for row in range(self.size)
        ]


def _resolve_backend(backend: Backend, dim: int, brute_max_dim: int) -> Literal["kdtree", "brute"]:
    if backend == "auto":
        return "kdtree" if dim <= brute_max_dim else "brute"
    if backend not in ("kdtree", "brute"):
        raise ConfigurationError(f"Unknown neighbour backend {backend!r}")
    return backend


def build_index(
    points: PointSet | NDArray[np.float64],
    active: NDArray[np.bool_] | None = None,
    metric: str = "euclidean",
    *,
    backend: Backend = "auto",
    leafsize: int = 16,
    brute_max_dim: int = 20,
    workers: int = 1,
    min_active: int = 2,
) -> NeighborIndex:
    """Build an exact neighbour index over the points selected by ``active``."""

    coords = points.points if isinstance(points, PointSet) else np.asarray(points, dtype=float)
    if coords.ndim == 1:
        coords = coords.reshape(-1, 1)
    if active is None:
        ids = np.arange(coords.shape[0], dtype=np.int64)
    else:
        mask = np.asarray(active, dtype=bool)
        if mask.shape[0] != coords.shape[0]:
            raise QueryError("active mask length must match the number of points")
        ids = np.flatnonzero(mask).astype(np.int64)
    if ids.shape[0] < min_active:
        raise DegenerateInputError(
            f"at least {min_active} active points are required", active=int(ids.shape[0])
        )
    resolved = _resolve_backend(backend, coords.shape[1], brute_max_dim)
    return NeighborIndex(
        coords,
        ids,
        metric=get_metric(metric),
        backend=resolved,
        leafsize=leafsize,
        workers=workers,
    )


__all__ = ["METRICS", "Metric", "NeighborIndex", "build_index", "get_metric"]
