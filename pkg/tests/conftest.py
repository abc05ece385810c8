from __future__ import annotations

import sys
from collections.abc import Iterator
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from Border_Peeling.config.params import (  # noqa: E402
    BorderPeelingParams,
    GaussianComponent,
    GeneratorSpec,
)
from Border_Peeling.dataset.generators import generate  # noqa: E402
from Border_Peeling.dataset.io import save_csv  # noqa: E402
from Border_Peeling.dataset.points import PointSet  # noqa: E402
from Border_Peeling.logging_utils import configure_logging  # noqa: E402
from tests.fixtures.datasets import two_blob_spec  # noqa: E402


@pytest.fixture(autouse=True)
def _quiet_logging() -> Iterator[None]:
    configure_logging("WARNING")
    yield


@pytest.fixture()
def line_points() -> PointSet:
    """Three collinear scalars {0, 1, 10}."""

    return PointSet(np.array([[0.0], [1.0], [10.0]]))


@pytest.fixture()
def two_blobs() -> PointSet:
    """Two unit-variance blobs at (-5, 0) and (5, 0), 100 points each, seed 7."""

    return generate(two_blob_spec())


@pytest.fixture()
def single_blob() -> PointSet:
    spec = GeneratorSpec(
        kind="gaussian-mixture",
        components=[GaussianComponent(mean=[0.0, 0.0], covariance=1.0, count=150)],
        seed=3,
    )
    return generate(spec)


@pytest.fixture()
def default_params() -> BorderPeelingParams:
    return BorderPeelingParams()


@pytest.fixture()
def blobs_csv(tmp_path: Path, two_blobs: PointSet) -> Path:
    """Two-blob data written as ``x,y,label`` without a header."""

    return save_csv(two_blobs, tmp_path / "blobs.csv", header=False)
