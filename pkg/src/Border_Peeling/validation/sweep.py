"""Sensitivity sweep over lambda offsets and peel fractions."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from ..clustering.pipeline import BorderPeelingClusterer
from ..config.params import BorderPeelingParams, SweepConfig
from ..dataset.points import PointSet
from ..errors import ConfigurationError, DataQualityError
from ..logging_utils import get_logger, log_duration
from ..metrics.external import score_run
from ..peeling.association import estimate_lambda
from ..schemas.tables import SweepSchema
from ..schemas.utils import validate_frame

LOGGER = get_logger("bp.validation.sweep")

DatasetFactory = Callable[[int], PointSet]


@dataclass(frozen=True, slots=True)
class SweepReport:
    table: pd.DataFrame
    runs: pd.DataFrame

    @property
    def ari_spread(self) -> float:
        """Max minus min of the per-cell mean ARI."""

        means = self.table["ari_mean"]
        return float(means.max() - means.min())


def resolve_lambda(estimate: float, offset: float, *, relative: bool) -> float:
    """Apply an additive offset, or a relative one (``offset / 10`` of the estimate)."""

    value = estimate * (1.0 + offset / 10.0) if relative else estimate + offset
    if value <= 0:
        raise ConfigurationError(
            "lambda offset leaves a non-positive threshold",
            estimate=estimate,
            offset=offset,
            relative=relative,
        )
    return value


def _run_cell(
    points: PointSet,
    params: BorderPeelingParams,
    offset: float,
    fraction: float,
    repeat: int,
    relative: bool,
) -> dict[str, Any]:
    truth = points.truth_labels()
    estimate = estimate_lambda(points, params.peeling.k, params.neighbors)
    lambda_value = resolve_lambda(estimate, offset, relative=relative)
    peeling = params.peeling.with_lambda(lambda_value).model_copy(
        update={"peel_fraction": fraction}
    )
    cell_params = params.model_copy(update={"peeling": peeling})
    result = BorderPeelingClusterer(cell_params).fit(points)
    report = score_run(result, truth)
    return {
        "lambda_offset": offset,
        "lambda_value": lambda_value,
        "peel_fraction": fraction,
        "repeat": repeat,
        "ari": report.ari,
        "ami": report.ami,
        "n_clusters": report.n_clusters_found,
        "n_noise": report.n_noise,
    }


def run_sweep(
    data: PointSet | DatasetFactory,
    params: BorderPeelingParams,
    sweep: SweepConfig,
    *,
    seed: int = 0,
    workers: int = 1,
) -> SweepReport:
    """Cluster and score every (offset, fraction, repeat) cell.

    A callable ``data`` is called with ``seed + repeat`` so each repeat sees a
    freshly sampled dataset; a fixed point set is reused for every repeat.
    """

    datasets: list[PointSet] = []
    for repeat in range(sweep.repeats):
        points = data(seed + repeat) if callable(data) else data
        if not points.has_labels:
            raise DataQualityError("sweep requires ground truth labels for scoring")
        datasets.append(points)
    tasks = [
        (offset, fraction, repeat)
        for offset in sweep.lambda_offsets
        for fraction in sweep.peel_fractions
        for repeat in range(sweep.repeats)
    ]
    with log_duration(LOGGER, "sweep_completed", cells=len(tasks), workers=workers):
        rows = Parallel(n_jobs=max(1, workers), prefer="processes")(
            delayed(_run_cell)(
                datasets[repeat], params, offset, fraction, repeat, sweep.relative_offsets
            )
            for offset, fraction, repeat in tasks
        )
    runs = pd.DataFrame(rows)
    grouped = runs.groupby(["lambda_offset", "peel_fraction"], sort=False)
    table = grouped.agg(
        lambda_value=("lambda_value", "mean"),
        repeats=("repeat", "count"),
        ari_mean=("ari", "mean"),
        ari_std=("ari", lambda s: float(np.std(s))),
        ami_mean=("ami", "mean"),
        ami_std=("ami", lambda s: float(np.std(s))),
        n_clusters_mean=("n_clusters", "mean"),
    ).reset_index()
    table = table[list(SweepSchema.columns)]
    report = SweepReport(table=validate_frame(SweepSchema, table), runs=runs)
    LOGGER.info("sweep_summary", cells=len(table), ari_spread=report.ari_spread)
    return report


__all__ = ["DatasetFactory", "SweepReport", "resolve_lambda", "run_sweep"]
