"""Border identification: density influence and the percentile cutoff."""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..errors import QueryError
from ..math.kernels import local_scaled_kernel
from ..neighbors.index import NeighborIndex
from ..neighbors.reverse import ReverseNeighborMap


def density_influence(
    index: NeighborIndex, rmap: ReverseNeighborMap, k: int
) -> NDArray[np.float64]:
    """Sum of locally scaled kernel responses over each point's reverse neighbours.

    Output is aligned with ``index.ids``. The bandwidth of a source point is the
    distance to its k-th nearest active neighbour, so every edge j -> i
    contributes ``exp(-d(i, j)^2 / sigma_j^2)`` to ``b_i``.
    """

    if not np.array_equal(rmap.ids, index.ids):
        raise QueryError("reverse map and index cover different active sets")
    if rmap.k != min(k, index.size - 1):
        raise QueryError("reverse map was built for a different k", k=k, map_k=rmap.k)
    if rmap.k == 0:
        return np.zeros(index.size)
    sq = index.metric.squared(rmap.knn_keys)
    sq_sigma = sq[:, -1:]
    terms = local_scaled_kernel(sq, np.broadcast_to(sq_sigma, sq.shape))
    return np.bincount(
        rmap.knn_positions.reshape(-1), weights=terms.reshape(-1), minlength=index.size
    ).astype(float)


def cutoff_rank(peel_fraction: float, size: int) -> int:
    """Nearest-rank position (1-based) of the cutoff among ``size`` values."""

    # frac * m can land a hair above an integer (0.07 * 100); round before ceil
    rank = math.ceil(round(peel_fraction * size, 9))
    return min(max(rank, 1), size)


def classify_border(
    b: ArrayLike, peel_fraction: float
) -> tuple[NDArray[np.bool_], float]:
    """Flag points whose influence is at or below the nearest-rank cutoff ``tau``."""

    values = np.asarray(b, dtype=float).reshape(-1)
    if values.size == 0:
        raise QueryError("at least one active point is required to classify borders")
    if not 0 < peel_fraction < 1:
        raise QueryError("peel_fraction must lie in (0, 1)", peel_fraction=peel_fraction)
    tau = float(np.sort(values)[cutoff_rank(peel_fraction, values.size) - 1])
    return values <= tau, tau


__all__ = ["classify_border", "cutoff_rank", "density_influence"]
