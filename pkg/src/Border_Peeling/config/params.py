"""Pydantic models describing border-peeling configuration."""

from __future__ import annotations

from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator


class _BaseConfig(BaseModel):
    """Base model that forbids unknown fields and allows reassignment validation."""

    model_config = {
        "extra": "forbid",
        "validate_assignment": True,
        "populate_by_name": True,
    }


class PeelParams(_BaseConfig):
    """Parameters of the iterative peeling loop.

    ``lambda_`` is the maximal association threshold. When left unset it is
    estimated from the data as ``mean(D_k) + std(D_k)``.
    """

    k: int = Field(20, ge=1, description="Neighbour count for kNN / reverse-kNN queries")
    c: float = Field(3.0, gt=0, alias="C", description="Threshold strictness constant")
    peel_fraction: float = Field(
        0.10, gt=0, lt=1, description="Fraction of active points classified border per iteration"
    )
    lambda_: float | None = Field(None, gt=0, alias="lambda")
    max_iterations: int = Field(100, ge=1)
    termination_sensitivity: float = Field(3.0, ge=0)

    def with_lambda(self, value: float) -> PeelParams:
        return self.model_copy(update={"lambda_": float(value)})


class NeighborConfig(_BaseConfig):
    """Backend selection for exact neighbour queries."""

    backend: Literal["auto", "kdtree", "brute"] = "auto"
    metric: Literal["euclidean", "manhattan", "chebyshev"] = "euclidean"
    leafsize: int = Field(16, ge=1)
    brute_max_dim: int = Field(
        20, ge=1, description="Dimensions above which the auto backend falls back to brute force"
    )


class ClusteringConfig(_BaseConfig):
    """Post-peeling clustering options."""

    min_cluster_size: int | None = Field(
        None, ge=1, description="Clusters smaller than this are noise; None uses 10/30 rule"
    )

    def resolve_min_cluster_size(self, n_points: int) -> int:
        if self.min_cluster_size is not None:
            return self.min_cluster_size
        return 10 if n_points < 1000 else 30


class GaussianComponent(_BaseConfig):
    """One component of a Gaussian mixture.

    ``covariance`` accepts a scalar variance, a diagonal (list of variances) or a
    full square matrix.
    """

    mean: list[float] = Field(..., min_length=1)
    covariance: float | list[float] | list[list[float]] = 1.0
    count: int = Field(..., ge=1)

    def covariance_matrix(self) -> np.ndarray:
        dim = len(self.mean)
        cov = self.covariance
        if isinstance(cov, (int, float)):
            return np.eye(dim) * float(cov)
        array = np.asarray(cov, dtype=float)
        if array.ndim == 1:
            if array.shape[0] != dim:
                msg = f"diagonal covariance has {array.shape[0]} entries, expected {dim}"
                raise ValueError(msg)
            return np.diag(array)
        if array.shape != (dim, dim):
            msg = f"covariance must be {dim}x{dim}, received {array.shape}"
            raise ValueError(msg)
        return array


class GeneratorSpec(_BaseConfig):
    """Synthetic dataset description.

    ``gaussian-mixture`` uses ``components``; ``uniform-interval`` draws ``n``
    scalars uniformly on ``[low, high]``.
    """

    kind: Literal["gaussian-mixture", "uniform-interval"]
    components: list[GaussianComponent] = Field(default_factory=list)
    low: float = -1.0
    high: float = 1.0
    n: int | None = Field(None, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check_kind(self) -> GeneratorSpec:
        if self.kind == "gaussian-mixture":
            if not self.components:
                raise ValueError("gaussian-mixture requires at least one component")
            dims = {len(component.mean) for component in self.components}
            if len(dims) != 1:
                raise ValueError("all mixture components must share the same dimension")
        else:
            if self.n is None:
                raise ValueError("uniform-interval requires n")
            if not self.high > self.low:
                raise ValueError("uniform-interval requires high > low")
        return self

    def with_seed(self, seed: int) -> GeneratorSpec:
        return self.model_copy(update={"seed": int(seed)})


class SweepConfig(_BaseConfig):
    """Grid for the λ-offset × peel-fraction sensitivity sweep."""

    lambda_offsets: list[float] = Field(..., min_length=1)
    peel_fractions: list[float] = Field(..., min_length=1)
    repeats: int = Field(1, ge=1)
    relative_offsets: bool = False

    @field_validator("peel_fractions")
    @classmethod
    def _check_fractions(cls, values: list[float]) -> list[float]:
        for value in values:
            if not 0 < value < 1:
                msg = f"peel fraction {value} must lie in (0, 1)"
                raise ValueError(msg)
        return values


class BorderPeelingParams(_BaseConfig):
    """Top-level parameter file."""

    peeling: PeelParams = Field(default_factory=PeelParams)
    neighbors: NeighborConfig = Field(default_factory=NeighborConfig)
    clustering: ClusteringConfig = Field(default_factory=ClusteringConfig)
    generator: GeneratorSpec | None = None


class RunConfig(_BaseConfig):
    """Fully resolved inputs for a single clustering run."""

    input_path: Path | None = None
    has_header: bool = False
    label_column: int | None = None
    generator: GeneratorSpec | None = None
    params: BorderPeelingParams = Field(default_factory=BorderPeelingParams)
    lambda_offset: float = 0.0
    output_dir: Path = Path("run")
    plot: bool = False
    snapshots: int = Field(3, ge=0)

    @model_validator(mode="after")
    def _one_source(self) -> RunConfig:
        if (self.input_path is None) == (self.generator is None):
            raise ValueError("exactly one of input_path or generator must be provided")
        return self


__all__ = [
    "BorderPeelingParams",
    "ClusteringConfig",
    "GaussianComponent",
    "GeneratorSpec",
    "NeighborConfig",
    "PeelParams",
    "RunConfig",
    "SweepConfig",
]
