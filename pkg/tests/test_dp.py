"""Layered solver: frozen micro-examples, oracle equivalence, engine parity."""

from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from fracpart.core import evaluate, validate_instance
from fracpart.dp import (
    MemoryBudgetExceeded,
    build_layers,
    dp_fp,
    dp_map,
)
from fracpart.oracle import brute_force_fp, brute_force_map


def test_layers_one_transition():
    inst = validate_instance([1, 1], [1, 1], 2)
    layers = build_layers(inst)
    assert set(layers[0].states) == {((0, 0),)}
    assert set(layers[1].states) == {((0, 0),), ((1, 1),)}
    assert len(layers) == 2


def test_layers_track_first_item_only():
    # the second (last) item is never transitioned into a tracked group
    inst = validate_instance([3, 1], [1, 3], 2)
    layers = build_layers(inst)
    assert set(layers[1].states) == {((0, 0),), ((3, 1),)}


def test_layers_with_single_group():
    inst = validate_instance([2, 5, 1], [1, 1, 1], 1)
    layers = build_layers(inst)
    assert all(set(layer.states) == {()} for layer in layers)


def test_layer_monotonicity():
    inst = validate_instance([2, 3, 1, 2, 4], [1, 2, 2, 1, 3], 3)
    layers = build_layers(inst)
    for prev, cur in zip(layers, layers[1:]):
        assert set(prev.states) <= set(cur.states)


def test_dp_map_examples():
    assert dp_map(validate_instance([3, 1], [1, 3], 2)).optimum == Fraction(1, 3)
    assert dp_map(validate_instance([4, 2, 6], [2, 1, 3], 2)).optimum == 2
    assert dp_map(validate_instance([1, 2], [1, 1], 2)).optimum == 1


def test_dp_fp_examples():
    inst = validate_instance([1, 3, 2, 2], [2, 2, 1, 3], 2)
    report = dp_fp(inst)
    assert report.decision is True
    stats = evaluate(inst, report.witness)
    assert all(g.q > 0 and g.p * 8 == g.q * 8 for g in stats.groups)
    assert dp_fp(validate_instance([1, 1], [1, 2], 2)).decision is False


def test_dp_fp_single_group_stops_at_layer_zero():
    report = dp_fp(validate_instance([4, 1, 1], [2, 3, 3], 1))
    assert report.decision is True
    assert report.layers_built == 1
    assert report.witness.groups == (0, 0, 0)


def test_dp_map_single_item_two_groups():
    # one group must stay empty, so the best min is 0
    report = dp_map(validate_instance([5], [3], 2))
    assert report.optimum == 0


def test_state_budget_raises_cleanly():
    inst = validate_instance(list(range(1, 9)), list(range(8, 0, -1)), 3)
    with pytest.raises(MemoryBudgetExceeded):
        dp_map(inst, state_budget=10, engine="sparse")


def test_engine_validation():
    inst = validate_instance([1, 2, 3], [3, 2, 1], 3)
    with pytest.raises(ValueError):
        dp_map(inst, engine="dense")  # dense is m == 2 only
    with pytest.raises(ValueError):
        dp_map(inst, engine="fancy")
    big = validate_instance([10**6, 10**6], [10**6, 10**6], 2)
    with pytest.raises(MemoryBudgetExceeded):
        dp_map(big, engine="dense")  # grid would not fit the cell limit


def dp_instances(max_n=9):
    entries = st.integers(min_value=1, max_value=6)
    return st.tuples(
        st.integers(min_value=1, max_value=max_n), st.sampled_from((2, 3))
    ).flatmap(
        lambda nm: st.tuples(
            st.lists(entries, min_size=nm[0], max_size=nm[0]),
            st.lists(entries, min_size=nm[0], max_size=nm[0]),
            st.just(nm[1]),
        )
    )


@given(dp_instances())
@settings(max_examples=40, deadline=None)
def test_matches_oracle(data):
    a, b, m = data
    inst = validate_instance(a, b, m)
    map_report = dp_map(inst)
    assert map_report.optimum == brute_force_map(inst).optimum
    assert evaluate(inst, map_report.witness).min_value == map_report.optimum
    fp_report = dp_fp(inst)
    assert fp_report.decision == brute_force_fp(inst).fp_true
    if fp_report.decision:
        s, t = inst.totals()
        stats = evaluate(inst, fp_report.witness)
        assert all(g.q > 0 and g.p * t == g.q * s for g in stats.groups)


@given(dp_instances(max_n=8))
@settings(max_examples=40, deadline=None)
def test_canonicalization_neutrality(data):
    a, b, m = data
    inst = validate_instance(a, b, m)
    on = dp_map(inst, canonicalize=True, engine="sparse")
    off = dp_map(inst, canonicalize=False, engine="sparse")
    assert on.optimum == off.optimum
    assert evaluate(inst, off.witness).min_value == off.optimum
    assert dp_fp(inst, canonicalize=True, engine="sparse").decision == dp_fp(
        inst, canonicalize=False, engine="sparse"
    ).decision
    # collapsing symmetric states can only shrink the explored count
    assert on.states_explored <= off.states_explored


@given(dp_instances())
@settings(max_examples=40, deadline=None)
def test_states_explored_within_bound(data):
    a, b, m = data
    inst = validate_instance(a, b, m)
    s, t = inst.totals()
    report = dp_map(inst)
    assert report.states_explored <= (inst.n - 1) * ((s + 1) * (t + 1)) ** (m - 1)
    assert report.layers_built == inst.n


def two_group_instances():
    entries = st.integers(min_value=1, max_value=9)
    return st.integers(min_value=1, max_value=9).flatmap(
        lambda n: st.tuples(
            st.lists(entries, min_size=n, max_size=n),
            st.lists(entries, min_size=n, max_size=n),
        )
    )


@given(two_group_instances())
@settings(max_examples=40, deadline=None)
def test_dense_engine_matches_sparse(data):
    """Same decision, optimum, and explored-state count from both engines."""
    a, b = data
    inst = validate_instance(a, b, 2)
    dense_map = dp_map(inst, engine="dense")
    sparse_map = dp_map(inst, engine="sparse")
    assert dense_map.engine == "dense" and sparse_map.engine == "sparse"
    assert dense_map.optimum == sparse_map.optimum
    assert dense_map.states_explored == sparse_map.states_explored
    assert evaluate(inst, dense_map.witness).min_value == dense_map.optimum
    dense_fp = dp_fp(inst, engine="dense")
    sparse_fp = dp_fp(inst, engine="sparse")
    assert dense_fp.decision == sparse_fp.decision
    assert dense_fp.states_explored == sparse_fp.states_explored
    assert dense_fp.layers_built == sparse_fp.layers_built


def test_auto_prefers_dense_for_two_groups():
    inst = validate_instance([2, 3, 4], [4, 3, 2], 2)
    assert dp_map(inst).engine == "dense"
    assert dp_map(inst, engine="sparse").engine == "sparse"
    three = validate_instance([2, 3, 4], [4, 3, 2], 3)
    assert dp_map(three).engine == "sparse"
