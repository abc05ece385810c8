"""Closed-form expected density influence for a uniform 1-D cluster (k = 1)."""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import NDArray

from ..errors import DomainError

_E_INV = math.exp(-1.0)


def expected_influence(x: float, n: int) -> float:
    """Expected ``b_i`` at iteration 0 for ``n`` points uniform on ``[-1, 1]``.

    Evaluates::

        (2/n + (n(x+1)-2)/(2n) e^{-n(x+1)/2} + (n(1-x)-2)/(2n) e^{-n(1-x)/2}) e^{-1}
    """

    if n < 2:
        raise DomainError("n must be at least 2", n=n)
    if not -1.0 <= x <= 1.0:
        raise DomainError("x must lie in [-1, 1]", x=x)
    left = n * (x + 1.0)
    right = n * (1.0 - x)
    total = (
        2.0 / n
        + (left - 2.0) / (2.0 * n) * math.exp(-left / 2.0)
        + (right - 2.0) / (2.0 * n) * math.exp(-right / 2.0)
    )
    return total * _E_INV


def expected_influence_curve(xs: NDArray[np.float64], n: int) -> NDArray[np.float64]:
    """Vectorised :func:`expected_influence`."""

    values = np.asarray(xs, dtype=float)
    if np.any(values < -1.0) or np.any(values > 1.0):
        raise DomainError("x must lie in [-1, 1]")
    if n < 2:
        raise DomainError("n must be at least 2", n=n)
    left = n * (values + 1.0)
    right = n * (1.0 - values)
    total = (
        2.0 / n
        + (left - 2.0) / (2.0 * n) * np.exp(-left / 2.0)
        + (right - 2.0) / (2.0 * n) * np.exp(-right / 2.0)
    )
    return np.asarray(total * _E_INV, dtype=float)


def expected_influence_bin_average(low: float, high: float, n: int, samples: int = 401) -> float:
    """Mean of the expectation over ``[low, high]`` (x uniform within the bin)."""

    grid = np.linspace(low, high, samples)
    return float(np.mean(expected_influence_curve(grid, n)))


__all__ = ["expected_influence_bin_average", "expected_influence_curve", "expected_influence"]
