"""Deterministic synthetic datasets.

All sampling goes through ``numpy.random.Generator(PCG64(seed))`` so a given
spec and seed produce bit-identical point sets on every platform numpy supports.
"""

from __future__ import annotations

import numpy as np

from ..config.params import GaussianComponent, GeneratorSpec
from ..errors import ConfigurationError, DataQualityError
from ..logging_utils import get_logger
from .points import PointSet

LOGGER = get_logger("bp.dataset.generators")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _cholesky(component: GaussianComponent, index: int) -> np.ndarray:
    try:
        cov = component.covariance_matrix()
    except ValueError as exc:
        raise DataQualityError(str(exc), component=index) from exc
    if not np.allclose(cov, cov.T):
        raise DataQualityError("covariance must be symmetric", component=index)
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise DataQualityError("covariance must be positive-definite", component=index) from exc


def _gaussian_mixture(spec: GeneratorSpec, rng: np.random.Generator) -> PointSet:
    blocks: list[np.ndarray] = []
    labels: list[np.ndarray] = []
    for index, component in enumerate(spec.components):
        factor = _cholesky(component, index)
        mean = np.asarray(component.mean, dtype=float)
        standard = rng.standard_normal((component.count, mean.shape[0]))
        blocks.append(mean + standard @ factor.T)
        labels.append(np.full(component.count, index, dtype=np.int64))
    return PointSet(np.vstack(blocks), np.concatenate(labels))


def _uniform_interval(spec: GeneratorSpec, rng: np.random.Generator) -> PointSet:
    assert spec.n is not None
    values = rng.uniform(spec.low, spec.high, size=spec.n)
    return PointSet(values.reshape(-1, 1))


def generate(spec: GeneratorSpec) -> PointSet:
    """Sample the point set described by ``spec``."""

    rng = make_rng(spec.seed)
    if spec.kind == "gaussian-mixture":
        points = _gaussian_mixture(spec, rng)
    else:
        points = _uniform_interval(spec, rng)
    LOGGER.debug("dataset_generated", kind=spec.kind, seed=spec.seed, n=points.n, d=points.d)
    return points


def _blobs(means: list[list[float]], count: int, seed: int) -> GeneratorSpec:
    return GeneratorSpec(
        kind="gaussian-mixture",
        components=[GaussianComponent(mean=mean, covariance=1.0, count=count) for mean in means],
        seed=seed,
    )


PRESETS = {
    "gaussian2": lambda seed: _blobs([[-5.0, 0.0], [5.0, 0.0]], 200, seed),
    "gaussian2-adjacent": lambda seed: _blobs([[-2.0, 0.0], [2.0, 0.0]], 200, seed),
    "gaussian3": lambda seed: _blobs([[-6.0, 0.0], [6.0, 0.0], [0.0, 8.0]], 150, seed),
    "uniform": lambda seed: GeneratorSpec(kind="uniform-interval", low=-1.0, high=1.0, n=50, seed=seed),
}


def preset(name: str, seed: int = 0) -> GeneratorSpec:
    """Return a named generator spec."""

    try:
        factory = PRESETS[name]
    except KeyError as exc:
        known = ", ".join(sorted(PRESETS))
        raise ConfigurationError(f"Unknown generator preset {name!r}; expected one of {known}") from exc
    return factory(seed)


__all__ = ["PRESETS", "generate", "make_rng", "preset"]
