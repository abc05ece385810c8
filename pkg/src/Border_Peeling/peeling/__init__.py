"""Iterative border peeling."""

from .association import associate_borders, estimate_lambda, update_thresholds
from .border import classify_border, density_influence
from .engine import run_peeling
from .groups import reach_groups, smallest_group_after_peel
from .state import PeelingTrace, PeelRecord, PeelState, TerminationReason
from .termination import TerminationDecision, should_terminate

__all__ = [
    "PeelRecord",
    "PeelState",
    "PeelingTrace",
    "TerminationDecision",
    "TerminationReason",
    "associate_borders",
    "classify_border",
    "density_influence",
    "estimate_lambda",
    "reach_groups",
    "run_peeling",
    "should_terminate",
    "smallest_group_after_peel",
    "update_thresholds",
]
