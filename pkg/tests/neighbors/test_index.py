from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from Border_Peeling.dataset.points import PointSet
from Border_Peeling.errors import ConfigurationError, DegenerateInputError, QueryError
from Border_Peeling.neighbors.index import build_index, get_metric
from tests.strategies import point_matrices


@pytest.mark.parametrize("backend", ["kdtree", "brute"])
def test_knn_on_line(line_points: PointSet, backend: str) -> None:
    index = build_index(line_points, backend=backend)
    assert index.backend == backend
    assert index.knn(0, 1) == [(1, 1.0)]
    assert index.knn(1, 2) == [(0, 1.0), (2, 9.0)]
    assert len(index.knn(0, 5)) == 2


@pytest.mark.parametrize("backend", ["kdtree", "brute"])
def test_active_mask_is_respected(line_points: PointSet, backend: str) -> None:
    index = build_index(line_points, np.array([True, True, False]), backend=backend)
    assert index.size == 2
    assert index.knn(0, 5) == [(1, 1.0)]
    assert not index.is_active(2)
    with pytest.raises(QueryError, match="not active"):
        index.knn(2, 1)


def test_single_active_point_is_degenerate(line_points: PointSet) -> None:
    with pytest.raises(DegenerateInputError):
        build_index(line_points, np.array([False, True, False]))


def test_invalid_arguments(line_points: PointSet) -> None:
    index = build_index(line_points)
    with pytest.raises(QueryError):
        index.knn(0, 0)
    with pytest.raises(QueryError):
        build_index(line_points, np.array([True, True]))
    with pytest.raises(ConfigurationError):
        build_index(line_points, backend="ball")  # type: ignore[arg-type]
    with pytest.raises(ConfigurationError):
        get_metric("cosine")


def test_auto_backend_switches_on_dimension() -> None:
    low = build_index(np.zeros((4, 3)) + np.arange(4)[:, None])
    high = build_index(np.arange(4 * 25, dtype=float).reshape(4, 25))
    assert low.backend == "kdtree"
    assert high.backend == "brute"


def test_ties_break_by_lower_id() -> None:
    points = PointSet(np.array([[0.0], [-1.0], [1.0], [2.0]]))
    for backend in ("kdtree", "brute"):
        index = build_index(points, backend=backend)
        assert [i for i, _ in index.knn(0, 2)] == [1, 2]
        assert [i for i, _ in index.knn(0, 1)] == [1]


@pytest.mark.parametrize("backend", ["kdtree", "brute"])
def test_query_radius(line_points: PointSet, backend: str) -> None:
    index = build_index(line_points, backend=backend)
    assert index.query_radius(0, 1.0) == [(1, 1.0)]
    assert index.query_radius(0, 0.999) == []
    assert index.query_radius(point=np.array([0.5]), radius=0.5) == [(0, 0.5), (1, 0.5)]
    assert [i for i, _ in index.query_radius(1, 100.0)] == [0, 2]
    with pytest.raises(QueryError):
        index.query_radius(0, -1.0)
    with pytest.raises(QueryError):
        index.query_radius(0, 1.0, point=np.array([0.0]))


def test_radius_neighbors_uses_per_point_radius(line_points: PointSet) -> None:
    index = build_index(line_points)
    hits = index.radius_neighbors(np.array([1.0, 0.5, 9.0]))
    assert [h.tolist() for h in hits] == [[1], [], [1]]


def test_query_knn_includes_coincident_points(line_points: PointSet) -> None:
    index = build_index(line_points, backend="kdtree")
    positions, keys = index.query_knn(np.array([[1.0], [9.0]]), 2)
    assert index.ids[positions].tolist() == [[1, 0], [2, 1]]
    np.testing.assert_allclose(keys, [[0.0, 1.0], [1.0, 64.0]])


@pytest.mark.parametrize("metric", ["manhattan", "chebyshev"])
def test_other_metrics(metric: str) -> None:
    points = PointSet(np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.5]]))
    index = build_index(points, metric=metric, backend="kdtree")
    expected = {"manhattan": [(2, 1.5), (1, 2.0)], "chebyshev": [(1, 1.0), (2, 1.5)]}[metric]
    assert index.knn(0, 2) == expected


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(matrix=point_matrices(max_points=200), k=st.integers(min_value=1, max_value=25))
def test_kdtree_matches_brute_force(matrix: np.ndarray, k: int) -> None:
    tree = build_index(matrix, backend="kdtree")
    brute = build_index(matrix, backend="brute")
    tree_pos, tree_keys = tree.kneighbors(k)
    brute_pos, brute_keys = brute.kneighbors(k)
    np.testing.assert_array_equal(tree_pos, brute_pos)
    np.testing.assert_array_equal(tree_keys, brute_keys)


@settings(max_examples=50, deadline=None)
@given(matrix=point_matrices(max_points=40, dims=(1, 2)), k=st.integers(min_value=1, max_value=6))
def test_knn_agrees_with_sorted_distances(matrix: np.ndarray, k: int) -> None:
    index = build_index(matrix, backend="kdtree")
    n = matrix.shape[0]
    for i in range(n):
        diff = matrix - matrix[i]
        keys = (diff * diff).sum(axis=1)
        order = np.lexsort((np.arange(n), keys))
        expected = [int(j) for j in order if j != i][: min(k, n - 1)]
        assert [j for j, _ in index.knn(i, k)] == expected
