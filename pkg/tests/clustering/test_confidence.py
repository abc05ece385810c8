from __future__ import annotations

import pytest

from Border_Peeling.clustering.confidence import confidence_ranking, rank_members
from Border_Peeling.clustering.pipeline import BorderPeelingClusterer
from Border_Peeling.dataset.points import PointSet
from Border_Peeling.errors import QueryError


def test_single_extremes() -> None:
    assert rank_members([0, 0, 0], [0.1, 0.5, 0.9], 0, 1) == ([2], [0])


def test_m_larger_than_cluster_is_clamped() -> None:
    top, bottom = rank_members([0, 1, 0, 0], [0.3, 5.0, 0.1, 0.2], 0, 10)
    assert top == [0, 3, 2]
    assert bottom == [2, 3, 0]


def test_ties_break_by_id() -> None:
    top, bottom = rank_members([0, 0, 0], [0.5, 0.5, 0.5], 0, 2)
    assert top == [0, 1]
    assert bottom == [0, 1]


def test_zero_m_is_empty() -> None:
    assert rank_members([0, 0], [0.1, 0.2], 0, 0) == ([], [])


@pytest.mark.parametrize("cluster", [-1, 3])
def test_unknown_cluster(cluster: int) -> None:
    with pytest.raises(QueryError):
        rank_members([0, -1, 0], [0.1, 0.2, 0.3], cluster, 1)


def test_negative_m() -> None:
    with pytest.raises(QueryError):
        rank_members([0, 0], [0.1, 0.2], 0, -1)


def test_ranking_on_a_fitted_result(two_blobs: PointSet) -> None:
    result = BorderPeelingClusterer().fit(two_blobs)
    top, bottom = confidence_ranking(result, 0, 5)
    members = set(result.labels.members(0).tolist())
    assert set(top) <= members and set(bottom) <= members
    assert result.confidence[top[0]] >= result.confidence[bottom[0]]
