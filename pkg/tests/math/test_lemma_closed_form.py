from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from Border_Peeling.errors import DomainError
from Border_Peeling.math.lemma import expected_influence_bin_average, expected_influence_curve, expected_influence

unit_interval = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


def test_centre_value() -> None:
    expected = (2 / 50 + 2 * (48 / 100) * math.exp(-25)) * math.exp(-1)
    assert expected_influence(0.0, 50) == pytest.approx(expected, rel=1e-12)
    assert expected_influence(0.0, 50) == pytest.approx(0.014715, abs=5e-7)


def test_endpoint_value_is_smaller() -> None:
    endpoint = expected_influence(1.0, 50)
    assert endpoint == pytest.approx(math.exp(-1) / 50, rel=1e-9)
    assert endpoint == pytest.approx(0.007358, abs=5e-7)
    assert endpoint < expected_influence(0.0, 50)


@given(x=unit_interval, n=st.integers(min_value=2, max_value=500))
def test_symmetry(x: float, n: int) -> None:
    assert expected_influence(x, n) == pytest.approx(expected_influence(-x, n), rel=1e-12)


@pytest.mark.parametrize("x", [-1.0001, 1.5, math.inf])
def test_outside_interval(x: float) -> None:
    with pytest.raises(DomainError):
        expected_influence(x, 50)


def test_curve_matches_scalar_and_validates() -> None:
    xs = np.linspace(-1.0, 1.0, 9)
    np.testing.assert_allclose(expected_influence_curve(xs, 50), [expected_influence(x, 50) for x in xs])
    with pytest.raises(DomainError):
        expected_influence_curve(np.array([0.0, 2.0]), 50)
    with pytest.raises(DomainError):
        expected_influence_curve(xs, 1)


def test_bin_average_bends_below_centre_value_near_endpoint() -> None:
    edge_bin = expected_influence_bin_average(-1.0, -1.0 + 2 / 21, 50)
    assert expected_influence(-1.0, 50) < edge_bin < expected_influence(-1.0 + 2 / 21, 50)
    middle = expected_influence_bin_average(-0.05, 0.05, 50)
    assert middle == pytest.approx(expected_influence(0.0, 50), rel=1e-6)
