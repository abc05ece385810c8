"""Shared Hypothesis strategies."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

# integer grids make exact distance ties common
grid_coordinates = st.integers(min_value=-6, max_value=6).map(float)
real_coordinates = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False, allow_infinity=False)


@st.composite
def point_matrices(
    draw: st.DrawFn,
    *,
    min_points: int = 3,
    max_points: int = 60,
    dims: tuple[int, ...] = (1, 2, 5, 10),
    ties: bool | None = None,
) -> np.ndarray:
    n = draw(st.integers(min_value=min_points, max_value=max_points))
    d = draw(st.sampled_from(dims))
    use_grid = draw(st.booleans()) if ties is None else ties
    elements = grid_coordinates if use_grid else real_coordinates
    return draw(arrays(np.float64, (n, d), elements=elements))


@st.composite
def labelings(
    draw: st.DrawFn, *, min_size: int = 1, max_size: int = 8, max_label: int = 3
) -> tuple[list[int], list[int]]:
    n = draw(st.integers(min_value=min_size, max_value=max_size))
    label = st.integers(min_value=0, max_value=max_label)
    first = draw(st.lists(label, min_size=n, max_size=n))
    second = draw(st.lists(label, min_size=n, max_size=n))
    return first, second


peel_fractions = st.floats(min_value=0.02, max_value=0.5, allow_nan=False)
positive_lambdas = st.floats(min_value=0.05, max_value=20.0, allow_nan=False)
