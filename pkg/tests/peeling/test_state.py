from __future__ import annotations

import numpy as np

from Border_Peeling.peeling.state import (
    NOT_PEELED,
    UNASSIGNED,
    PeelingTrace,
    PeelState,
    TerminationReason,
)


def test_initial_state() -> None:
    state = PeelState.initial(4, 2.0)
    assert state.n == 4
    assert state.core_ids.tolist() == [0, 1, 2, 3]
    assert np.all(state.l == 2.0)
    assert np.all(state.rho == UNASSIGNED)
    assert np.all(state.peeled_at == NOT_PEELED)


def test_first_influence_is_kept_as_confidence() -> None:
    state = PeelState.initial(3, 1.0)
    state.record_influence(np.array([0, 1, 2]), np.array([0.1, 0.2, 0.3]))
    state.mark_border(np.array([0]))
    state.peel(1)
    state.record_influence(np.array([1, 2]), np.array([0.5, 0.6]))
    assert state.b0.tolist() == [0.1, 0.2, 0.3]
    assert state.b.tolist() == [0.1, 0.5, 0.6]


def test_peel_moves_border_out_of_active_set() -> None:
    state = PeelState.initial(4, 1.0)
    state.mark_border(np.array([1, 3]))
    state.rho[1] = 0
    state.rho_distance[1] = 0.25
    peeled = state.peel(2)
    assert peeled.tolist() == [1, 3]
    assert state.core_ids.tolist() == [0, 2]
    assert state.peeled_ids.tolist() == [1, 3]
    assert state.peeled_at.tolist() == [NOT_PEELED, 2, NOT_PEELED, 2]
    assert state.l.tolist() == [1.0, 0.25, 1.0, 1.0]
    assert state.border_ids.size == 0
    assert state.iteration == 2


def test_trace_serialises_and_discards() -> None:
    trace = PeelingTrace(lambda_value=1.5)
    trace.append(trace.next_record(np.array([4, 2]), 0.5, np.array([0.25, 0.75])))
    trace.append(trace.next_record(np.array([1]), 0.9, np.array([2.0])))
    assert trace.mean_b == [0.5, 2.0]
    discarded = trace.discard_last(TerminationReason.RATIO_RULE)
    assert discarded.iteration == 2
    assert discarded.ratio == 4.0
    payload = trace.to_dict()
    assert payload["n_iterations"] == 1
    assert payload["termination_reason"] == "ratio-rule"
    assert payload["iterations"][0] == {
        "iteration": 1,
        "peeled": [4, 2],
        "tau": 0.5,
        "mean_b": 0.5,
        "ratio": None,
    }
    assert payload["discarded"]["peeled"] == [1]
    assert payload["lambda"] == 1.5
