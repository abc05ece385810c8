from __future__ import annotations

import math

import numpy as np
import pytest

from Border_Peeling.config.params import PeelParams
from Border_Peeling.dataset.points import PointSet
from Border_Peeling.errors import DegenerateInputError
from Border_Peeling.peeling.association import (
    associate_borders,
    estimate_lambda,
    update_thresholds,
)
from Border_Peeling.peeling.state import UNASSIGNED, PeelState


def _scalars(*values: float) -> PointSet:
    return PointSet(np.array(values, dtype=float).reshape(-1, 1))


def test_lambda_with_zero_spread() -> None:
    assert estimate_lambda(_scalars(0, 1, 2, 3), 1) == pytest.approx(1.0)


def test_lambda_uses_population_std() -> None:
    value = estimate_lambda(_scalars(0, 1, 3), 1)
    assert value == pytest.approx(4 / 3 + math.sqrt(2 / 9))
    assert value == pytest.approx(1.8047, abs=1e-4)


def test_lambda_needs_more_points_than_k() -> None:
    with pytest.raises(DegenerateInputError):
        estimate_lambda(_scalars(0, 1, 3), 3)


def _state_with_border(n: int, border: list[int], lambda_value: float = 1.0) -> PeelState:
    state = PeelState.initial(n, lambda_value)
    state.mark_border(np.array(border, dtype=np.int64))
    return state


def test_border_links_to_nearest_inner_point() -> None:
    points = _scalars(0.0, 0.5, 2.0)
    state = associate_borders(_state_with_border(3, [0]), points)
    assert state.rho[0] == 1
    assert state.rho_distance[0] == pytest.approx(0.5)
    state.peel(1)
    assert state.l[0] == pytest.approx(0.5)


def test_border_without_candidate_stays_unassigned() -> None:
    points = _scalars(0.0, 2.0, 3.0)
    state = associate_borders(_state_with_border(3, [0]), points)
    assert state.rho[0] == UNASSIGNED
    state.peel(1)
    assert state.l[0] == 1.0


def test_equidistant_candidates_prefer_lower_id() -> None:
    points = _scalars(0.0, 1.0, -1.0)
    state = associate_borders(_state_with_border(3, [0]), points)
    assert state.rho[0] == 1


def test_borders_never_link_to_borders() -> None:
    points = _scalars(0.0, 0.1, 0.9)
    state = associate_borders(_state_with_border(3, [0, 1]), points)
    assert state.rho.tolist() == [2, 2, UNASSIGNED]


def test_all_border_leaves_everything_unassigned() -> None:
    points = _scalars(0.0, 0.1)
    state = associate_borders(_state_with_border(2, [0, 1]), points)
    assert np.all(state.rho == UNASSIGNED)


def _peeled_state(peeled_l: float, lambda_value: float = 1.0) -> tuple[PeelState, PointSet]:
    points = _scalars(0.0, 0.1, 0.2, 0.3)
    state = PeelState.initial(4, lambda_value)
    state.mark_border(np.array([0, 1, 2]))
    state.peel(1)
    state.l[:3] = peeled_l
    return state, points


def test_threshold_clamped_to_lambda() -> None:
    state, points = _peeled_state(0.5)
    update_thresholds(state, points, PeelParams(k=3, c=3.0))
    assert state.l[3] == 1.0
    state.l[:3] = 0.2
    update_thresholds(state, points, PeelParams(k=3, c=3.0))
    assert state.l[3] == pytest.approx(0.6)


def test_threshold_tightened_below_lambda() -> None:
    state, points = _peeled_state(0.1)
    update_thresholds(state, points, PeelParams(k=3, c=3.0))
    assert state.l[3] == pytest.approx(0.3)


def test_threshold_averages_available_peeled_points() -> None:
    state, points = _peeled_state(0.1)
    state.l[0] = 0.25
    update_thresholds(state, points, PeelParams(k=10, c=2.0))
    assert state.l[3] == pytest.approx(2.0 * (0.25 + 0.1 + 0.1) / 3)


def test_threshold_uses_k_nearest_peeled() -> None:
    state, points = _peeled_state(0.1)
    state.l[0] = 0.3
    update_thresholds(state, points, PeelParams(k=2, c=3.0))
    assert state.l[3] == pytest.approx(0.3)


def test_no_peeled_points_leaves_thresholds() -> None:
    points = _scalars(0.0, 1.0, 2.0)
    state = PeelState.initial(3, 2.5)
    update_thresholds(state, points, PeelParams(k=2))
    assert state.l.tolist() == [2.5, 2.5, 2.5]
