"""Stop rules for the peeling loop."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .state import PeelingTrace, TerminationReason

MIN_HISTORY = 2
MIN_ITERATION = 4


@dataclass(frozen=True, slots=True)
class TerminationDecision:
    stop: bool
    reason: TerminationReason | None = None
    discard: bool = False
    ratio: float | None = None
    threshold: float | None = None


CONTINUE = TerminationDecision(stop=False)


def peel_ratios(mean_b: Sequence[float]) -> list[float | None]:
    """``mean_b[s] / mean_b[s-1]`` for s >= 1; ``None`` where the previous mean is 0."""

    ratios: list[float | None] = []
    for previous, current in zip(mean_b[:-1], mean_b[1:], strict=True):
        ratios.append(current / previous if previous > 0 else None)
    return ratios


def ratio_outlier(
    ratios: Sequence[float | None], sensitivity: float
) -> tuple[bool, float | None]:
    """Whether the last ratio exceeds mean + sensitivity * std of the earlier ones.

    Undefined ratios are skipped; at least two earlier ratios are needed.
    """

    if not ratios or ratios[-1] is None:
        return False, None
    history = np.array([r for r in ratios[:-1] if r is not None], dtype=float)
    if history.size < MIN_HISTORY:
        return False, None
    threshold = float(history.mean() + sensitivity * history.std())
    return bool(ratios[-1] > threshold), threshold


def should_terminate(
    trace: PeelingTrace,
    sensitivity: float,
    *,
    max_iterations: int | None = None,
    remaining: int | None = None,
    min_active: int | None = None,
    group_remaining: int | None = None,
) -> TerminationDecision:
    """Decide whether the tentative last record of ``trace`` ends the run.

    The ratio rule and exhaustion both ask for the last peel to be discarded;
    reaching ``max_iterations`` keeps it. Exhaustion means the active set
    (``remaining``) or some reach group that still had full neighbourhoods
    (``group_remaining``) would drop below ``min_active`` points.
    """

    t = trace.n_iterations
    if t >= MIN_ITERATION:
        ratios = peel_ratios(trace.mean_b)
        fired, threshold = ratio_outlier(ratios, sensitivity)
        if fired:
            return TerminationDecision(
                stop=True,
                reason=TerminationReason.RATIO_RULE,
                discard=True,
                ratio=ratios[-1],
                threshold=threshold,
            )
    if min_active is not None:
        left = [value for value in (remaining, group_remaining) if value is not None]
        if left and min(left) < min_active:
            return TerminationDecision(
                stop=True, reason=TerminationReason.EXHAUSTED, discard=True
            )
    if max_iterations is not None and t >= max_iterations:
        return TerminationDecision(stop=True, reason=TerminationReason.MAX_ITERATIONS)
    return CONTINUE


__all__ = [
    "CONTINUE",
    "TerminationDecision",
    "peel_ratios",
    "ratio_outlier",
    "should_terminate",
]
