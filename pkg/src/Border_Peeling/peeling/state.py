"""Mutable peeling state and the per-run trace."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray

UNASSIGNED = -1
NOT_PEELED = -1


class TerminationReason(str, Enum):
    RATIO_RULE = "ratio-rule"
    MAX_ITERATIONS = "max-iterations"
    EXHAUSTED = "exhausted"


@dataclass(slots=True)
class PeelState:
    """Per-point arrays indexed by global point id.

    ``b`` holds the most recent density influence of each point (the value at
    its peel iteration for peeled points), ``b0`` the first-iteration value over
    the full set. ``rho`` is ``-1`` while unassigned and ``peeled_at`` is ``-1``
    for points that are still active.
    """

    active: NDArray[np.bool_]
    border: NDArray[np.bool_]
    b: NDArray[np.float64]
    b0: NDArray[np.float64]
    l: NDArray[np.float64]  # noqa: E741
    rho: NDArray[np.int64]
    rho_distance: NDArray[np.float64]
    peeled_at: NDArray[np.int64]
    lambda_value: float
    iteration: int = 0

    @classmethod
    def initial(cls, n_points: int, lambda_value: float) -> PeelState:
        return cls(
            active=np.ones(n_points, dtype=bool),
            border=np.zeros(n_points, dtype=bool),
            b=np.full(n_points, np.nan),
            b0=np.full(n_points, np.nan),
            l=np.full(n_points, float(lambda_value)),
            rho=np.full(n_points, UNASSIGNED, dtype=np.int64),
            rho_distance=np.full(n_points, np.nan),
            peeled_at=np.full(n_points, NOT_PEELED, dtype=np.int64),
            lambda_value=float(lambda_value),
        )

    @property
    def n(self) -> int:
        return int(self.active.shape[0])

    @property
    def core_ids(self) -> NDArray[np.int64]:
        return np.flatnonzero(self.active).astype(np.int64)

    @property
    def peeled_ids(self) -> NDArray[np.int64]:
        return np.flatnonzero(self.peeled_at != NOT_PEELED).astype(np.int64)

    @property
    def border_ids(self) -> NDArray[np.int64]:
        return np.flatnonzero(self.border).astype(np.int64)

    def record_influence(self, ids: NDArray[np.int64], values: NDArray[np.float64]) -> None:
        self.b[ids] = values
        if self.iteration == 0:
            self.b0[ids] = values

    def mark_border(self, ids: NDArray[np.int64]) -> None:
        self.border[:] = False
        self.border[ids] = True

    def clear_border(self) -> None:
        self.border[:] = False

    def peel(self, iteration: int) -> NDArray[np.int64]:
        """Remove the current border points from the active set.

        Points with an assigned ``rho`` take the association distance as their
        threshold; unassigned points keep the threshold they held.
        """

        ids = self.border_ids
        self.active[ids] = False
        self.peeled_at[ids] = iteration
        assigned = ids[self.rho[ids] != UNASSIGNED]
        self.l[assigned] = self.rho_distance[assigned]
        self.border[:] = False
        self.iteration = iteration
        return ids


@dataclass(frozen=True, slots=True)
class PeelRecord:
    iteration: int
    peeled: tuple[int, ...]
    tau: float
    mean_b: float
    ratio: float | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "iteration": self.iteration,
            "peeled": list(self.peeled),
            "tau": self.tau,
            "mean_b": self.mean_b,
            "ratio": self.ratio,
        }


@dataclass(slots=True)
class PeelingTrace:
    """History of executed iterations.

    ``discarded`` keeps the record of the iteration whose peel was rolled back
    when a stop rule fired before peeling.
    """

    lambda_value: float
    records: list[PeelRecord] = field(default_factory=list)
    discarded: PeelRecord | None = None
    termination_reason: TerminationReason | None = None

    @property
    def n_iterations(self) -> int:
        return len(self.records)

    @property
    def mean_b(self) -> list[float]:
        return [record.mean_b for record in self.records]

    def next_record(
        self, peeled: NDArray[np.int64], tau: float, peeled_b: NDArray[np.float64]
    ) -> PeelRecord:
        mean_b = float(np.mean(peeled_b)) if peeled_b.size else 0.0
        ratio = None
        if self.records and self.records[-1].mean_b > 0:
            ratio = mean_b / self.records[-1].mean_b
        return PeelRecord(
            iteration=len(self.records) + 1,
            peeled=tuple(int(i) for i in peeled),
            tau=float(tau),
            mean_b=mean_b,
            ratio=ratio,
        )

    def append(self, record: PeelRecord) -> None:
        self.records.append(record)

    def discard_last(self, reason: TerminationReason) -> PeelRecord:
        self.discarded = self.records.pop()
        self.termination_reason = reason
        return self.discarded

    def to_dict(self) -> dict[str, Any]:
        return {
            "iterations": [record.to_dict() for record in self.records],
            "n_iterations": self.n_iterations,
            "termination_reason": (
                self.termination_reason.value if self.termination_reason else None
            ),
            "discarded": self.discarded.to_dict() if self.discarded else None,
            "lambda": self.lambda_value,
        }


__all__ = [
    "NOT_PEELED",
    "UNASSIGNED",
    "PeelRecord",
    "PeelState",
    "PeelingTrace",
    "TerminationReason",
]
