"""Reach groups of the active set: components of the graph ``d(i, j) <= lambda``.

Once a group holds fewer than ``k + 1`` points its members' k nearest
neighbours, and with them the kernel bandwidths, reach into other groups. The
peeling loop uses :func:`smallest_group_after_peel` to stop before any group
that still has full neighbourhoods is peeled below ``k + 2`` points.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray
from scipy.sparse import coo_array
from scipy.sparse.csgraph import connected_components

from ..errors import QueryError
from ..neighbors.index import NeighborIndex


def _reach_edges(
    index: NeighborIndex, radius: float
) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
    hits = index.radius_neighbors(np.full(index.size, float(radius)))
    rows = np.repeat(np.arange(index.size), [h.size for h in hits]).astype(np.int64)
    cols = np.concatenate(hits).astype(np.int64) if hits else np.empty(0, dtype=np.int64)
    return rows, cols


def _component_labels(
    size: int, rows: NDArray[np.int64], cols: NDArray[np.int64]
) -> NDArray[np.int64]:
    if size == 0:
        return np.empty(0, dtype=np.int64)
    graph = coo_array(
        (np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(size, size)
    ).tocsr()
    _, labels = connected_components(graph, directed=False)
    return labels.astype(np.int64)


def reach_groups(index: NeighborIndex, radius: float) -> NDArray[np.int64]:
    """Group id of every active point, aligned with ``index.ids``."""

    if radius < 0:
        raise QueryError("radius must be non-negative", radius=radius)
    rows, cols = _reach_edges(index, radius)
    return _component_labels(index.size, rows, cols)


def smallest_group_after_peel(
    index: NeighborIndex, border: NDArray[np.bool_], radius: float, min_size: int
) -> int | None:
    """Smallest surviving size among groups of at least ``min_size`` points.

    ``border`` flags the tentative peel, aligned with ``index.ids``. Each group
    of the current active set with ``min_size`` or more members is split by
    removing its border points; the size of its largest remaining piece is
    taken, and the minimum over those groups returned. ``None`` when no group
    reaches ``min_size``.
    """

    flags = np.asarray(border, dtype=bool)
    if flags.shape[0] != index.size:
        raise QueryError("border flags must align with the index")
    if radius < 0:
        raise QueryError("radius must be non-negative", radius=radius)
    rows, cols = _reach_edges(index, radius)
    before = _component_labels(index.size, rows, cols)
    sizes = np.bincount(before)
    eligible = sizes >= min_size
    if not np.any(eligible):
        return None

    kept = np.flatnonzero(~flags)
    largest = np.zeros(sizes.shape[0], dtype=np.int64)
    if kept.size:
        compact = np.full(index.size, -1, dtype=np.int64)
        compact[kept] = np.arange(kept.size)
        survive = ~flags[rows] & ~flags[cols]
        after = _component_labels(kept.size, compact[rows[survive]], compact[cols[survive]])
        piece_sizes = np.bincount(after)[after]
        np.maximum.at(largest, before[kept], piece_sizes)
    return int(largest[eligible].min())


__all__ = ["reach_groups", "smallest_group_after_peel"]
