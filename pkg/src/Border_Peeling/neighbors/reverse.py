"""Reverse k-nearest-neighbour maps."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..errors import QueryError
from .index import NeighborIndex


@dataclass(frozen=True, slots=True, eq=False)
class ReverseNeighborMap:
    """Inverted kNN relation over the active points of one index.

    The forward graph is kept alongside the inversion: ``knn_positions[j]``
    lists the neighbours of active point ``j`` and ``knn_keys[j]`` their metric
    keys. ``reverse(i)`` returns the global ids of points that count ``i``
    among their ``k`` nearest, in ascending id order.
    """

    ids: NDArray[np.int64]
    k: int
    knn_positions: NDArray[np.int64]
    knn_keys: NDArray[np.float64]
    indptr: NDArray[np.int64]
    sources: NDArray[np.int64]

    def _position(self, point_id: int) -> int:
        pos = int(np.searchsorted(self.ids, point_id))
        if pos >= self.ids.shape[0] or self.ids[pos] != point_id:
            raise QueryError(f"point {point_id} is not active", point_id=int(point_id))
        return pos

    def reverse(self, point_id: int) -> list[int]:
        pos = self._position(point_id)
        members = self.sources[self.indptr[pos] : self.indptr[pos + 1]]
        return [int(self.ids[member]) for member in members]

    def counts(self) -> NDArray[np.int64]:
        """``|RNN(i)|`` for every active point, aligned with :attr:`ids`."""

        return np.diff(self.indptr)

    def forward(self, point_id: int) -> list[int]:
        return [int(self.ids[p]) for p in self.knn_positions[self._position(point_id)]]

    def as_dict(self) -> dict[int, list[int]]:
        return {int(point_id): self.reverse(int(point_id)) for point_id in self.ids}


def reverse_knn(index: NeighborIndex, k: int) -> ReverseNeighborMap:
    """Invert the kNN relation of ``index``: j ∈ reverse(i) ⇔ i ∈ knn(j)."""

    positions, keys = index.kneighbors(k)
    size = index.size
    k_eff = positions.shape[1]
    targets = positions.reshape(-1)
    sources = np.repeat(np.arange(size, dtype=np.int64), k_eff)
    order = np.argsort(targets, kind="stable")
    counts = np.bincount(targets, minlength=size)
    indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    return ReverseNeighborMap(
        ids=index.ids,
        k=k_eff,
        knn_positions=positions,
        knn_keys=keys,
        indptr=indptr,
        sources=sources[order],
    )


__all__ = ["ReverseNeighborMap", "reverse_knn"]
