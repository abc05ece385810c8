"""Immutable point sets and cluster labelings."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..errors import DataQualityError

NOISE = -1


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, slots=True, eq=False)
class PointSet:
    """An ``n × d`` matrix of finite coordinates with optional ground truth.

    Arrays are copied and frozen on construction so instances can be shared
    between threads.
    """

    points: NDArray[np.float64]
    ground_truth: NDArray[np.int64] | None = None

    def __post_init__(self) -> None:
        points = np.array(self.points, dtype=float, copy=True)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        if points.ndim != 2:
            raise DataQualityError("points must be a 2-D matrix", shape=list(points.shape))
        if points.shape[0] < 1 or points.shape[1] < 1:
            raise DataQualityError("point set must have n >= 1 and d >= 1", shape=list(points.shape))
        if not np.all(np.isfinite(points)):
            bad = int(np.argwhere(~np.isfinite(points))[0][0])
            raise DataQualityError("coordinates must be finite", row=bad)
        object.__setattr__(self, "points", _readonly(points))
        if self.ground_truth is not None:
            truth = np.array(self.ground_truth, dtype=np.int64, copy=True).reshape(-1)
            if truth.shape[0] != points.shape[0]:
                raise DataQualityError(
                    "ground_truth length must equal the number of points",
                    n_points=points.shape[0],
                    n_labels=truth.shape[0],
                )
            object.__setattr__(self, "ground_truth", _readonly(truth))

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def d(self) -> int:
        return int(self.points.shape[1])

    @property
    def has_labels(self) -> bool:
        return self.ground_truth is not None

    def truth_labels(self) -> ClusterLabels:
        if self.ground_truth is None:
            raise DataQualityError("point set has no ground truth labels")
        return ClusterLabels.from_raw(self.ground_truth)


@dataclass(frozen=True, slots=True, eq=False)
class ClusterLabels:
    """Per-point cluster ids with ``-1`` for noise; ids are contiguous from 0."""

    labels: NDArray[np.int64]

    def __post_init__(self) -> None:
        labels = np.array(self.labels, dtype=np.int64, copy=True).reshape(-1)
        if np.any(labels < NOISE):
            raise DataQualityError("labels must be >= -1")
        present = np.unique(labels[labels != NOISE])
        if present.size and not np.array_equal(present, np.arange(present.size)):
            raise DataQualityError(
                "non-noise labels must form a contiguous range starting at 0",
                labels=present.tolist(),
            )
        object.__setattr__(self, "labels", _readonly(labels))

    @classmethod
    def from_raw(cls, values: ArrayLike | Sequence[int]) -> ClusterLabels:
        """Compact arbitrary integer labels; negative values are treated as noise."""

        raw = np.asarray(values, dtype=np.int64).reshape(-1)
        compact = np.full(raw.shape, NOISE, dtype=np.int64)
        mask = raw >= 0
        if np.any(mask):
            _, inverse = np.unique(raw[mask], return_inverse=True)
            compact[mask] = inverse
        return cls(compact)

    @property
    def n_clusters(self) -> int:
        present = self.labels[self.labels != NOISE]
        return int(np.unique(present).size)

    @property
    def n_noise(self) -> int:
        return int(np.count_nonzero(self.labels == NOISE))

    def __len__(self) -> int:
        return int(self.labels.shape[0])

    def members(self, label: int) -> NDArray[np.int64]:
        return np.flatnonzero(self.labels == label)

    def sizes(self) -> dict[int, int]:
        values, counts = np.unique(self.labels[self.labels != NOISE], return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts, strict=True)}


__all__ = ["NOISE", "ClusterLabels", "PointSet"]
