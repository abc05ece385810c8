"""Pandera schemas for the tabular artifacts."""

from __future__ import annotations

import pandera as pa
from pandera import Check, Column, DataFrameSchema

LabelsSchema = DataFrameSchema(
    {
        "point_id": Column(pa.Int64, Check.ge(0), unique=True),
        "label": Column(pa.Int64, Check.ge(-1)),
    },
    coerce=True,
    strict=True,
    ordered=True,
    name="labels",
)


SweepSchema = DataFrameSchema(
    {
        "lambda_offset": Column(pa.Float),
        "lambda_value": Column(pa.Float, Check.gt(0)),
        "peel_fraction": Column(pa.Float, Check.in_range(0, 1, include_min=False, include_max=False)),
        "repeats": Column(pa.Int64, Check.ge(1)),
        "ari_mean": Column(pa.Float, Check.in_range(-1, 1)),
        "ari_std": Column(pa.Float, Check.ge(0)),
        "ami_mean": Column(pa.Float, Check.le(1)),
        "ami_std": Column(pa.Float, Check.ge(0)),
        "n_clusters_mean": Column(pa.Float, Check.ge(0)),
    },
    coerce=True,
    strict=True,
    name="sweep",
)


LemmaReportSchema = DataFrameSchema(
    {
        "bin_low": Column(pa.Float, Check.in_range(-1, 1)),
        "bin_high": Column(pa.Float, Check.in_range(-1, 1)),
        "bin_center": Column(pa.Float, Check.in_range(-1, 1)),
        "count": Column(pa.Int64, Check.ge(0)),
        "empirical": Column(pa.Float, nullable=True),
        "analytic_center": Column(pa.Float, Check.ge(0)),
        "analytic_bin": Column(pa.Float, Check.ge(0)),
        "abs_error": Column(pa.Float, Check.ge(0), nullable=True),
    },
    coerce=True,
    strict=True,
    name="lemma_report",
)


__all__ = ["LabelsSchema", "LemmaReportSchema", "SweepSchema"]
