from __future__ import annotations

import numpy as np
import pytest

from Border_Peeling.dataset.points import PointSet
from Border_Peeling.errors import QueryError
from Border_Peeling.neighbors.index import build_index
from Border_Peeling.peeling.groups import reach_groups, smallest_group_after_peel

# a run of six unit-spaced points and a separate run of three
COORDS = np.array([0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 100.0, 101.0, 102.0]).reshape(-1, 1)


@pytest.fixture()
def index():
    return build_index(PointSet(COORDS))


def _flags(*positions: int) -> np.ndarray:
    flags = np.zeros(COORDS.shape[0], dtype=bool)
    flags[list(positions)] = True
    return flags


def test_groups_follow_the_reach_radius(index) -> None:
    groups = reach_groups(index, 1.5)
    assert len(set(groups[:6].tolist())) == 1
    assert len(set(groups[6:].tolist())) == 1
    assert groups[0] != groups[6]
    assert len(set(reach_groups(index, 0.5).tolist())) == COORDS.shape[0]


def test_no_peel_keeps_the_group_whole(index) -> None:
    assert smallest_group_after_peel(index, _flags(), 1.5, 4) == 6


def test_peel_splitting_a_group_reports_its_largest_piece(index) -> None:
    assert smallest_group_after_peel(index, _flags(2), 1.5, 4) == 3
    assert smallest_group_after_peel(index, _flags(0, 5), 1.5, 4) == 4


def test_groups_below_the_minimum_are_ignored(index) -> None:
    # the three-point run may vanish without counting as exhausted
    assert smallest_group_after_peel(index, _flags(6, 7, 8), 1.5, 4) == 6
    assert smallest_group_after_peel(index, _flags(), 1.5, 7) is None


def test_fully_peeled_group_reports_zero(index) -> None:
    assert smallest_group_after_peel(index, _flags(0, 1, 2, 3, 4, 5), 1.5, 4) == 0


def test_flags_must_align(index) -> None:
    with pytest.raises(QueryError, match="align"):
        smallest_group_after_peel(index, np.zeros(3, dtype=bool), 1.5, 4)
    with pytest.raises(QueryError, match="non-negative"):
        reach_groups(index, -1.0)
