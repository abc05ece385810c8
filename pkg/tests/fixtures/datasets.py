"""Generator specs shared by tests."""

from __future__ import annotations

from Border_Peeling.config.params import GaussianComponent, GeneratorSpec


def two_blob_spec(seed: int = 7, count: int = 100, separation: float = 5.0) -> GeneratorSpec:
    """Unit-variance blobs centred at ``(-separation, 0)`` and ``(separation, 0)``."""

    return GeneratorSpec(
        kind="gaussian-mixture",
        components=[
            GaussianComponent(mean=[-separation, 0.0], covariance=1.0, count=count),
            GaussianComponent(mean=[separation, 0.0], covariance=1.0, count=count),
        ],
        seed=seed,
    )
