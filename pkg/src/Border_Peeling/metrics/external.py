"""Chance-adjusted external validation indices (ARI, AMI)."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING, Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import gammaln

from ..dataset.points import ClusterLabels
from ..errors import DataQualityError
from .contingency import ContingencyTable

if TYPE_CHECKING:  # pragma: no cover - import cycle guard
    from ..clustering.labels import ClusteringResult

_EPS = float(np.finfo(np.float64).eps)


def adjusted_rand_index(a: ClusterLabels | ArrayLike, b: ClusterLabels | ArrayLike) -> float:
    """Adjusted Rand index from exact integer pair counts.

    Noise points count as singleton classes. Labelings that agree up to a
    permutation score exactly 1.
    """

    table = ContingencyTable.from_labels(a, b)
    tn, fp, fn, tp = table.pair_confusion()
    if fn == 0 and fp == 0:
        return 1.0
    return 2.0 * (tp * tn - fn * fp) / ((tp + fn) * (fn + tn) + (tp + fp) * (fp + tn))


def _entropy(marginal: NDArray[np.int64], total: int) -> float:
    p = marginal[marginal > 0] / total
    return float(-np.sum(p * np.log(p)))


def mutual_information(table: ContingencyTable) -> float:
    n = table.total
    if n == 0:
        return 0.0
    rows, cols = np.nonzero(table.counts)
    nij = table.counts[rows, cols].astype(float)
    outer = table.row_sums[rows].astype(float) * table.col_sums[cols].astype(float)
    mi = np.sum(nij / n * (np.log(nij) + np.log(n) - np.log(outer)))
    return max(float(mi), 0.0)


def expected_mutual_information(table: ContingencyTable) -> float:
    """Expected MI under the hypergeometric permutation model.

    Terms are accumulated in log space; equal marginals are evaluated once and
    weighted by their multiplicity.
    """

    n = table.total
    if n <= 1:
        return 0.0
    a_values, a_mult = np.unique(table.row_sums, return_counts=True)
    b_values, b_mult = np.unique(table.col_sums, return_counts=True)
    log_n = np.log(n)
    lg_n1 = gammaln(n + 1)
    emi = 0.0
    for a, wa in zip(a_values.tolist(), a_mult.tolist(), strict=True):
        for b, wb in zip(b_values.tolist(), b_mult.tolist(), strict=True):
            low, high = max(1, a + b - n), min(a, b)
            if low > high:
                continue
            nij = np.arange(low, high + 1, dtype=float)
            log_prob = (
                gammaln(a + 1)
                + gammaln(b + 1)
                + gammaln(n - a + 1)
                + gammaln(n - b + 1)
                - lg_n1
                - gammaln(nij + 1)
                - gammaln(a - nij + 1)
                - gammaln(b - nij + 1)
                - gammaln(n - a - b + nij + 1)
            )
            term = nij / n * (np.log(nij) + log_n - np.log(a) - np.log(b))
            emi += wa * wb * float(np.sum(term * np.exp(log_prob)))
    return emi


def adjusted_mutual_information(
    a: ClusterLabels | ArrayLike, b: ClusterLabels | ArrayLike
) -> float:
    """AMI normalised by the larger of the two entropies.

    When either labeling has zero entropy the result is 1 for identical
    labelings and 0 otherwise.
    """

    table = ContingencyTable.from_labels(a, b)
    n = table.total
    if n == 0 or table.is_permutation():
        return 1.0
    h_a = _entropy(table.row_sums, n)
    h_b = _entropy(table.col_sums, n)
    if h_a == 0.0 or h_b == 0.0:
        return 0.0
    mi = mutual_information(table)
    emi = expected_mutual_information(table)
    denominator = max(h_a, h_b) - emi
    if denominator < 0:
        denominator = min(denominator, -_EPS)
    else:
        denominator = max(denominator, _EPS)
    return float((mi - emi) / denominator)


@dataclass(frozen=True, slots=True)
class ScoreReport:
    ari: float
    ami: float
    n_clusters_found: int
    n_noise: int
    n_clusters_truth: int

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


def score_labels(
    predicted: ClusterLabels | ArrayLike, truth: ClusterLabels | ArrayLike | None
) -> ScoreReport:
    if truth is None:
        raise DataQualityError("ground truth labels are required for scoring")
    found = (
        predicted if isinstance(predicted, ClusterLabels) else ClusterLabels.from_raw(predicted)
    )
    expected = truth if isinstance(truth, ClusterLabels) else ClusterLabels.from_raw(truth)
    if len(found) != len(expected):
        raise DataQualityError(
            "labelings must have equal lengths", left=len(found), right=len(expected)
        )
    return ScoreReport(
        ari=adjusted_rand_index(found, expected),
        ami=adjusted_mutual_information(found, expected),
        n_clusters_found=found.n_clusters,
        n_noise=found.n_noise,
        n_clusters_truth=expected.n_clusters,
    )


def score_run(result: ClusteringResult, truth: ClusterLabels | ArrayLike | None) -> ScoreReport:
    """ARI/AMI of a clustering result against ground truth."""

    return score_labels(result.labels, truth)


__all__ = [
    "ScoreReport",
    "adjusted_mutual_information",
    "adjusted_rand_index",
    "expected_mutual_information",
    "mutual_information",
    "score_labels",
    "score_run",
]
