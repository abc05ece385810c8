"""Border association and adaptive association thresholds."""

from __future__ import annotations

import numpy as np

from ..config.params import NeighborConfig, PeelParams
from ..dataset.points import PointSet
from ..errors import DegenerateInputError
from ..logging_utils import get_logger
from ..neighbors.index import build_index
from .state import PeelState

LOGGER = get_logger("bp.peeling.association")


def estimate_lambda(
    points: PointSet, k: int, neighbors: NeighborConfig | None = None, *, workers: int = 1
) -> float:
    """``mean(D_k) + std(D_k)`` over every kNN distance of the full set.

    ``std`` is the population standard deviation.
    """

    if points.n <= k:
        raise DegenerateInputError(
            "lambda estimation needs more points than k", n_points=points.n, k=k
        )
    cfg = neighbors or NeighborConfig()
    index = build_index(
        points,
        metric=cfg.metric,
        backend=cfg.backend,
        leafsize=cfg.leafsize,
        brute_max_dim=cfg.brute_max_dim,
        workers=workers,
    )
    _, keys = index.kneighbors(k)
    distances = index.metric.distance(keys).reshape(-1)
    value = float(np.mean(distances) + np.std(distances))
    LOGGER.debug("lambda_estimated", k=k, value=value)
    return value


def associate_borders(
    state: PeelState,
    points: PointSet,
    neighbors: NeighborConfig | None = None,
    *,
    workers: int = 1,
) -> PeelState:
    """Link each current border point to its nearest non-border point within ``l``.

    Ties go to the lower point id. Border points without a candidate inside
    their threshold stay unassigned.
    """

    border_ids = state.border_ids
    inner = state.active & ~state.border
    if border_ids.size == 0:
        return state
    if not np.any(inner):
        LOGGER.info("association_skipped", reason="no_non_border_points", borders=border_ids.size)
        return state
    cfg = neighbors or NeighborConfig()
    index = build_index(
        points,
        inner,
        metric=cfg.metric,
        backend=cfg.backend,
        leafsize=cfg.leafsize,
        brute_max_dim=cfg.brute_max_dim,
        workers=workers,
        min_active=1,
    )
    assigned = 0
    for point_id in border_ids:
        hits = index.query_radius(point=points.points[point_id], radius=float(state.l[point_id]))
        if hits:
            target, distance = hits[0]
            state.rho[point_id] = target
            state.rho_distance[point_id] = distance
            assigned += 1
    LOGGER.debug("borders_associated", borders=int(border_ids.size), assigned=assigned)
    return state


def update_thresholds(
    state: PeelState,
    points: PointSet,
    params: PeelParams,
    neighbors: NeighborConfig | None = None,
    *,
    workers: int = 1,
) -> PeelState:
    """Tighten the threshold of every surviving point from its peeled neighbours.

    ``l' = C * mean(l)`` over the ``k`` nearest already-peeled points (all of
    them when fewer exist); the new threshold is ``l'`` if below ``lambda``,
    else ``lambda``. Without peeled points the thresholds are left alone.
    """

    peeled = state.peeled_at >= 0
    survivors = state.core_ids
    if not np.any(peeled) or survivors.size == 0:
        return state
    cfg = neighbors or NeighborConfig()
    index = build_index(
        points,
        peeled,
        metric=cfg.metric,
        backend=cfg.backend,
        leafsize=cfg.leafsize,
        brute_max_dim=cfg.brute_max_dim,
        workers=workers,
        min_active=1,
    )
    positions, _ = index.query_knn(points.points[survivors], params.k)
    neighbour_l = state.l[index.ids[positions]]
    proposed = params.c * neighbour_l.mean(axis=1)
    state.l[survivors] = np.where(proposed < state.lambda_value, proposed, state.lambda_value)
    return state


__all__ = ["associate_borders", "estimate_lambda", "update_thresholds"]
