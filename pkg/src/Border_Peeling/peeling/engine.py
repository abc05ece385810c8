"""The iterative border-peeling loop."""

from __future__ import annotations

import numpy as np

from ..config.params import NeighborConfig, PeelParams
from ..dataset.points import PointSet
from ..errors import DegenerateInputError
from ..logging_utils import get_logger, log_duration
from ..neighbors.index import build_index
from ..neighbors.reverse import reverse_knn
from .association import associate_borders, estimate_lambda, update_thresholds
from .border import classify_border, density_influence
from .groups import smallest_group_after_peel
from .state import PeelingTrace, PeelState
from .termination import should_terminate

LOGGER = get_logger("bp.peeling.engine")


def run_peeling(
    points: PointSet,
    params: PeelParams,
    neighbors: NeighborConfig | None = None,
    *,
    workers: int = 1,
) -> tuple[PeelState, PeelingTrace]:
    """Peel border layers until a stop rule fires.

    Each iteration computes density influence over the active set, classifies
    the border, records it, and then either stops (rolling the tentative peel
    back when the ratio rule or exhaustion fired) or associates, peels and
    updates thresholds. Points still active at the end form the core set.
    """

    k = params.k
    if points.n <= k + 2:
        raise DegenerateInputError(
            "too few points for the configured k", n_points=points.n, k=k, required=k + 3
        )
    cfg = neighbors or NeighborConfig()
    lambda_value = (
        params.lambda_
        if params.lambda_ is not None
        else estimate_lambda(points, k, cfg, workers=workers)
    )
    state = PeelState.initial(points.n, lambda_value)
    trace = PeelingTrace(lambda_value=lambda_value)
    LOGGER.info(
        "peeling_started",
        n_points=points.n,
        dim=points.d,
        k=k,
        lambda_value=lambda_value,
        peel_fraction=params.peel_fraction,
    )

    with log_duration(LOGGER, "peeling_finished", n_points=points.n):
        iteration = 0
        while True:
            iteration += 1
            index = build_index(
                points,
                state.active,
                metric=cfg.metric,
                backend=cfg.backend,
                leafsize=cfg.leafsize,
                brute_max_dim=cfg.brute_max_dim,
                workers=workers,
            )
            rmap = reverse_knn(index, k)
            b = density_influence(index, rmap, k)
            state.record_influence(index.ids, b)
            flags, tau = classify_border(b, params.peel_fraction)
            border_ids = index.ids[flags]
            state.mark_border(border_ids)
            record = trace.next_record(border_ids, tau, b[flags])
            trace.append(record)

            group_remaining = smallest_group_after_peel(index, flags, lambda_value, k + 2)
            decision = should_terminate(
                trace,
                params.termination_sensitivity,
                max_iterations=params.max_iterations,
                remaining=index.size - int(border_ids.size),
                min_active=k + 2,
                group_remaining=group_remaining,
            )
            if decision.stop and decision.discard and decision.reason is not None:
                trace.discard_last(decision.reason)
                state.clear_border()
                LOGGER.info(
                    "peeling_terminated",
                    reason=decision.reason.value,
                    iteration=iteration,
                    ratio=decision.ratio,
                    threshold=decision.threshold,
                    group_remaining=group_remaining,
                )
                break

            associate_borders(state, points, cfg, workers=workers)
            state.peel(iteration)
            update_thresholds(state, points, params, cfg, workers=workers)
            LOGGER.debug(
                "peeling_iteration",
                iteration=iteration,
                peeled=int(border_ids.size),
                active=int(np.count_nonzero(state.active)),
                tau=tau,
                mean_b=record.mean_b,
                ratio=record.ratio,
            )
            if decision.stop and decision.reason is not None:
                trace.termination_reason = decision.reason
                LOGGER.info("peeling_terminated", reason=decision.reason.value, iteration=iteration)
                break

    return state, trace


__all__ = ["run_peeling"]
