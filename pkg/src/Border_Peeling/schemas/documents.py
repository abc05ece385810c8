"""Pydantic model of ``result.json``."""

from __future__ import annotations

from pydantic import BaseModel, Field, model_validator


class ScoreDocument(BaseModel):
    model_config = {"extra": "forbid"}

    ari: float = Field(..., ge=-1.0, le=1.0)
    ami: float = Field(..., le=1.0)
    n_clusters_found: int = Field(..., ge=0)
    n_noise: int = Field(..., ge=0)
    n_clusters_truth: int = Field(..., ge=0)


class RunParameters(BaseModel):
    model_config = {"extra": "forbid", "populate_by_name": True}

    k: int = Field(..., ge=1)
    c: float = Field(..., gt=0, alias="C")
    peel_fraction: float = Field(..., gt=0, lt=1)
    lambda_: float = Field(..., gt=0, alias="lambda")
    max_iterations: int = Field(..., ge=1)
    termination_sensitivity: float = Field(..., ge=0)
    min_cluster_size: int = Field(..., ge=1)


class ResultDocument(BaseModel):
    """Stable clustering result schema; checked before every write."""

    model_config = {"extra": "forbid"}

    source: str
    n_points: int = Field(..., ge=1)
    dim: int = Field(..., ge=1)
    labels: list[int]
    n_clusters: int = Field(..., ge=0)
    n_noise: int = Field(..., ge=0)
    core_ids: list[int]
    confidence: list[float]
    peeled_at: list[int]
    iterations: int = Field(..., ge=0)
    termination_reason: str | None
    params: RunParameters
    param_hash: str
    score: ScoreDocument | None = None

    @model_validator(mode="after")
    def _check_consistency(self) -> ResultDocument:
        n = self.n_points
        for name in ("labels", "confidence", "peeled_at"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} must have one entry per point")
        clusters = {label for label in self.labels if label != -1}
        if clusters != set(range(len(clusters))):
            raise ValueError("cluster labels must be contiguous from 0")
        if len(clusters) != self.n_clusters:
            raise ValueError("n_clusters does not match labels")
        if self.labels.count(-1) != self.n_noise:
            raise ValueError("n_noise does not match labels")
        if any(not 0 <= i < n for i in self.core_ids):
            raise ValueError("core ids out of range")
        return self


__all__ = ["ResultDocument", "RunParameters", "ScoreDocument"]
