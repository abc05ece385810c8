from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings

from Border_Peeling.dataset.points import ClusterLabels
from Border_Peeling.errors import DataQualityError
from Border_Peeling.metrics.contingency import ContingencyTable
from Border_Peeling.metrics.external import (
    adjusted_mutual_information,
    adjusted_rand_index,
    expected_mutual_information,
    score_labels,
)
from tests.fixtures.oracles import exact_emi, pair_count_ari
from tests.strategies import labelings


def test_crossed_halves_score_negative() -> None:
    assert adjusted_rand_index([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(-0.5)


@pytest.mark.parametrize(
    ("a", "b"),
    [
        ([0, 0, 1, 1], [0, 0, 1, 1]),
        ([0, 0, 1, 1], [1, 1, 0, 0]),
        ([0, 1, 2, 2, 1], [2, 0, 1, 1, 0]),
    ],
)
def test_permuted_labelings_score_one(a: list[int], b: list[int]) -> None:
    assert adjusted_rand_index(a, b) == 1.0
    assert adjusted_mutual_information(a, b) == 1.0


def test_single_cluster_against_split() -> None:
    assert adjusted_mutual_information([0, 0, 1, 1], [0, 0, 0, 0]) == 0.0
    assert adjusted_rand_index([0, 0, 1, 1], [0, 0, 0, 0]) == 0.0


def test_all_noise_scores_zero() -> None:
    noise = ClusterLabels(np.full(4, -1))
    assert adjusted_rand_index(noise, [0, 0, 1, 1]) == 0.0


def test_noise_points_are_singletons() -> None:
    assert adjusted_rand_index([-1, -1, 0, 0], [1, 2, 0, 0]) == 1.0
    assert adjusted_rand_index([-1, -1, 0, 0], [1, 1, 0, 0]) < 1.0


def test_metrics_are_symmetric() -> None:
    a, b = [0, 0, 0, 1, 1, 2, 2, 2], [0, 0, 1, 1, 1, 2, 2, 0]
    assert adjusted_rand_index(a, b) == pytest.approx(adjusted_rand_index(b, a))
    assert adjusted_mutual_information(a, b) == pytest.approx(adjusted_mutual_information(b, a))


@settings(max_examples=200, deadline=None)
@given(labelings(max_size=10))
def test_ari_matches_pair_counting(pair: tuple[list[int], list[int]]) -> None:
    a, b = pair
    assert adjusted_rand_index(a, b) == pytest.approx(pair_count_ari(a, b), abs=1e-12)


@settings(max_examples=150, deadline=None)
@given(labelings(min_size=2, max_size=12))
def test_emi_matches_exact_hypergeometric_sum(pair: tuple[list[int], list[int]]) -> None:
    a, b = pair
    table = ContingencyTable.from_labels(a, b)
    assert expected_mutual_information(table) == pytest.approx(exact_emi(a, b), abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(labelings(min_size=2, max_size=12))
def test_ami_is_bounded(pair: tuple[list[int], list[int]]) -> None:
    assert adjusted_mutual_information(*pair) <= 1.0 + 1e-9


def test_contingency_counts() -> None:
    table = ContingencyTable.from_labels([0, 0, 1, -1], [1, 1, 1, 0])
    assert table.counts.tolist() == [[0, 2], [0, 1], [1, 0]]
    assert table.pair_confusion() == (6, 4, 0, 2)
    assert not table.is_permutation()


def test_score_labels_report() -> None:
    report = score_labels([0, 0, 1, -1], [0, 0, 1, 1])
    assert report.n_clusters_found == 2
    assert report.n_noise == 1
    assert report.n_clusters_truth == 2
    assert set(report.as_dict()) == {"ari", "ami", "n_clusters_found", "n_noise", "n_clusters_truth"}


def test_score_labels_errors() -> None:
    with pytest.raises(DataQualityError, match="ground truth"):
        score_labels([0, 1], None)
    with pytest.raises(DataQualityError, match="equal lengths"):
        score_labels([0, 1], [0, 1, 1])
    with pytest.raises(DataQualityError, match="equal lengths"):
        adjusted_rand_index([0, 1], [0])
