"""Locally scaled Gaussian kernel."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray


def local_scaled_kernel(
    sq_distances: NDArray[np.float64],
    sq_bandwidths: NDArray[np.float64],
) -> NDArray[np.float64]:
    """``exp(-d^2 / sigma^2)`` evaluated element-wise from squared quantities.

    A zero bandwidth (duplicate points) maps to 1 for zero distance and 0
    otherwise, the limit of the kernel as sigma goes to 0.
    """

    sq = np.asarray(sq_distances, dtype=float)
    sq_sigma = np.asarray(sq_bandwidths, dtype=float)
    zero = sq_sigma == 0.0
    values = np.exp(-sq / np.where(zero, 1.0, sq_sigma))
    limit = np.where(sq == 0.0, 1.0, 0.0)
    return np.asarray(np.where(zero, limit, values), dtype=float)


__all__ = ["local_scaled_kernel"]
