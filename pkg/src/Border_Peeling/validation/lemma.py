"""Monte-Carlo check of the closed-form first-iteration influence on [-1, 1].

Each trial samples ``n`` uniform scalars, computes ``b`` with ``k = 1`` over the
full set and bins the values by position. The closed form is normalised per
unit length of the interval, so empirical bin means are multiplied by ``2 / n``
before comparison. The analytic value of a bin is averaged over the bin, which
matters at the endpoints where the curve bends sharply.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd

from ..dataset.points import PointSet
from ..errors import DomainError
from ..logging_utils import get_logger, log_duration
from ..math.lemma import expected_influence_bin_average, expected_influence
from ..neighbors.index import build_index
from ..neighbors.reverse import reverse_knn
from ..peeling.border import density_influence
from ..schemas.tables import LemmaReportSchema
from ..schemas.utils import validate_frame

LOGGER = get_logger("bp.validation.lemma")

DEFAULT_TOLERANCE = 0.003
MIN_TRIALS_FOR_VERDICT = 100


@dataclass(frozen=True, slots=True)
class LemmaReport:
    table: pd.DataFrame
    n: int
    trials: int
    bins: int
    seed: int
    tolerance: float

    @property
    def max_abs_error(self) -> float:
        errors = self.table["abs_error"].dropna()
        return float(errors.max()) if not errors.empty else float("nan")

    @property
    def endpoint_bins_smallest(self) -> bool:
        """Whether the first and last bins hold the two smallest analytic values."""

        smallest = set(np.argsort(self.table["analytic_bin"].to_numpy(), kind="stable")[:2])
        return smallest == {0, len(self.table) - 1}

    @property
    def passed(self) -> bool | None:
        """Tolerance verdict; ``None`` when too few trials were run to judge."""

        if self.trials < MIN_TRIALS_FOR_VERDICT:
            return None
        errors = self.table["abs_error"]
        return bool(errors.notna().all() and (errors <= self.tolerance).all())


def first_iteration_influence(values: np.ndarray) -> np.ndarray:
    """``b`` at the first iteration for ``k = 1`` over one sample of scalars."""

    points = PointSet(values.reshape(-1, 1))
    index = build_index(points, backend="brute")
    return density_influence(index, reverse_knn(index, 1), 1)


def validate_lemma(
    n: int = 50,
    trials: int = 10_000,
    bins: int = 21,
    seed: int = 0,
    tolerance: float = DEFAULT_TOLERANCE,
) -> LemmaReport:
    if n < 2:
        raise DomainError("n must be at least 2", n=n)
    if trials < 1:
        raise DomainError("trials must be at least 1", trials=trials)
    if bins < 1:
        raise DomainError("bins must be at least 1", bins=bins)
    rng = np.random.Generator(np.random.PCG64(seed))
    edges = np.linspace(-1.0, 1.0, bins + 1)
    sums = np.zeros(bins)
    counts = np.zeros(bins, dtype=np.int64)
    with log_duration(LOGGER, "lemma_sampled", n=n, trials=trials, bins=bins):
        for _ in range(trials):
            sample = rng.uniform(-1.0, 1.0, size=n)
            b = first_iteration_influence(sample)
            slot = np.clip(np.searchsorted(edges, sample, side="right") - 1, 0, bins - 1)
            sums += np.bincount(slot, weights=b, minlength=bins)
            counts += np.bincount(slot, minlength=bins)
    with np.errstate(invalid="ignore", divide="ignore"):
        empirical = np.where(counts > 0, sums / np.maximum(counts, 1), np.nan) * (2.0 / n)
    centers = 0.5 * (edges[:-1] + edges[1:])
    analytic_bin = np.array(
        [expected_influence_bin_average(low, high, n) for low, high in zip(edges[:-1], edges[1:], strict=True)]
    )
    table = pd.DataFrame(
        {
            "bin_low": edges[:-1],
            "bin_high": edges[1:],
            "bin_center": centers,
            "count": counts,
            "empirical": empirical,
            "analytic_center": [expected_influence(float(x), n) for x in centers],
            "analytic_bin": analytic_bin,
            "abs_error": np.abs(empirical - analytic_bin),
        }
    )
    report = LemmaReport(
        table=validate_frame(LemmaReportSchema, table),
        n=n,
        trials=trials,
        bins=bins,
        seed=seed,
        tolerance=tolerance,
    )
    LOGGER.info(
        "lemma_validated",
        max_abs_error=report.max_abs_error,
        passed=report.passed,
        endpoints_smallest=report.endpoint_bins_smallest,
    )
    return report


__all__ = ["DEFAULT_TOLERANCE", "LemmaReport", "first_iteration_influence", "validate_lemma"]
