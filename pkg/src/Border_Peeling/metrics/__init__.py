"""External clustering metrics."""

from .contingency import ContingencyTable, expand_noise
from .external import (
    ScoreReport,
    adjusted_mutual_information,
    adjusted_rand_index,
    expected_mutual_information,
    mutual_information,
    score_labels,
    score_run,
)

__all__ = [
    "ContingencyTable",
    "ScoreReport",
    "adjusted_mutual_information",
    "adjusted_rand_index",
    "expand_noise",
    "expected_mutual_information",
    "mutual_information",
    "score_labels",
    "score_run",
]
