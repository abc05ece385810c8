"""Cross-tabulation of two labelings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.sparse import coo_array

from ..dataset.points import NOISE, ClusterLabels
from ..errors import DataQualityError


def as_label_array(labels: ClusterLabels | ArrayLike) -> NDArray[np.int64]:
    if isinstance(labels, ClusterLabels):
        return labels.labels
    return np.asarray(labels, dtype=np.int64).reshape(-1)


def expand_noise(labels: NDArray[np.int64]) -> NDArray[np.int64]:
    """Give every noise point its own singleton class."""

    values = np.asarray(labels, dtype=np.int64).copy()
    noise = np.flatnonzero(values == NOISE)
    if noise.size:
        start = int(values.max(initial=NOISE)) + 1
        values[noise] = np.arange(start, start + noise.size)
    return values


@dataclass(frozen=True, slots=True, eq=False)
class ContingencyTable:
    counts: NDArray[np.int64]

    @classmethod
    def from_labels(
        cls, a: ClusterLabels | ArrayLike, b: ClusterLabels | ArrayLike
    ) -> ContingencyTable:
        left, right = as_label_array(a), as_label_array(b)
        if left.shape[0] != right.shape[0]:
            raise DataQualityError(
                "labelings must have equal lengths", left=left.shape[0], right=right.shape[0]
            )
        _, rows = np.unique(expand_noise(left), return_inverse=True)
        _, cols = np.unique(expand_noise(right), return_inverse=True)
        rows, cols = rows.reshape(-1), cols.reshape(-1)
        shape = (int(rows.max(initial=-1)) + 1, int(cols.max(initial=-1)) + 1)
        counts = coo_array(
            (np.ones(rows.size, dtype=np.int64), (rows, cols)), shape=shape
        ).toarray()
        return cls(counts=np.asarray(counts, dtype=np.int64))

    @property
    def row_sums(self) -> NDArray[np.int64]:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> NDArray[np.int64]:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def is_permutation(self) -> bool:
        """True when the two labelings agree up to a renaming of classes."""

        occupied = self.counts > 0
        return bool(
            np.all(occupied.sum(axis=1) == 1)
            and np.all(occupied.sum(axis=0) == 1)
        )

    def pair_confusion(self) -> tuple[int, int, int, int]:
        """Ordered pair counts ``(tn, fp, fn, tp)`` as Python integers."""

        n = self.total
        sum_squares = int(np.sum(self.counts.astype(object) ** 2))
        rows = [int(v) for v in self.row_sums]
        cols = [int(v) for v in self.col_sums]
        tp = sum_squares - n
        fp = sum(c * c for c in cols) - sum_squares
        fn = sum(r * r for r in rows) - sum_squares
        tn = n * n - fp - fn - sum_squares
        return tn, fp, fn, tp


__all__ = ["ContingencyTable", "as_label_array", "expand_noise"]
