"""Gadget generators: exact parameters, labels, and certificate soundness."""

import math

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from fracpart.core import evaluate, ratio_value_equal, total_ratio, validate_instance
from fracpart.reductions import (
    BIG,
    COMPOSITE,
    DELTA,
    DELTA_3_2,
    MK,
    SCALED_SOURCE,
    UNIT_M,
    BadCardinality,
    BadDivisibility,
    BadWitness,
    BoundViolation,
    OddSourceSum,
    PartitionInstance,
    ThreePartitionInstance,
    ceil_ratio_with_sqrt,
    generate_q2,
    generate_q4,
    lift_q2_certificate,
    lift_q4_certificate,
)


# ----------------------------------------------------------- exact ceiling


def test_ceil_ratio_perfect_square():
    assert ceil_ratio_with_sqrt(3, 16, 4) == 2  # (3 + 5) / 4 exactly


def test_ceil_ratio_irrational():
    assert ceil_ratio_with_sqrt(3, 17, 4) == 3


def test_ceil_ratio_partition_gadget_case():
    assert ceil_ratio_with_sqrt(2870, 11664, 18) == 320


@given(
    st.integers(min_value=1, max_value=10**9),
    st.integers(min_value=1, max_value=10**12),
    st.integers(min_value=1, max_value=10**6),
)
@settings(max_examples=200)
def test_ceil_ratio_brackets_the_true_value(c, s, two_n):
    """r-1 < (c + sqrt(c*c+s)) / two_n <= r, checked by pure integer algebra."""
    r = ceil_ratio_with_sqrt(c, s, two_n)
    radicand = c * c + s
    upper = r * two_n - c
    assert upper >= 0 and upper * upper >= radicand
    lower = (r - 1) * two_n - c
    assert lower < 0 or lower * lower < radicand


# ------------------------------------------------------- source validation


def test_partition_source_rejects_odd_sum():
    with pytest.raises(OddSourceSum):
        PartitionInstance((1, 2))


def test_partition_source_rejects_nonpositive():
    with pytest.raises(Exception):
        PartitionInstance((0, 2))


def test_three_partition_source_validation():
    with pytest.raises(BadCardinality):
        ThreePartitionInstance((3, 3, 3, 3, 3), 2)
    with pytest.raises(BadDivisibility):
        ThreePartitionInstance((3, 3, 3, 3, 3, 4), 2)
    with pytest.raises(BoundViolation):
        ThreePartitionInstance((3, 3, 2, 4, 3, 3), 2)  # 4*2 = 8 < K = 9


def test_three_partition_accepts_strict_interior():
    src = ThreePartitionInstance((3, 3, 3, 3, 3, 3), 2)
    assert src.triple_sum == 9


# ------------------------------------------------------------- Q2 gadgets


def test_q2_reference_gadget():
    src = PartitionInstance((1, 1, 2))
    gen = generate_q2(src, 2)
    p = gen.params
    assert (p.kind, p.K, p.N, p.L, p.M) == ("Q2", 2, 9, 320, 10880)
    assert gen.instance.a == tuple(
        [10880, 10880, 21760] + [2] * 11 + [3] * 4 + [21760, 21760]
    )
    assert gen.instance.b == tuple([10880] * 18 + [97954, 97954])
    assert gen.instance.totals() == (87074, 391748)
    assert (p.target_ratio.p, p.target_ratio.q) == (43537, 195874)
    assert ratio_value_equal(p.target_ratio, total_ratio(gen.instance))


def test_q2_equal_entries_gadget():
    gen = generate_q2(PartitionInstance((2, 2)), 2)
    p = gen.params
    assert (p.L, p.M) == (320, 12160)
    assert gen.instance.a == tuple([24320, 24320] + [2] * 10 + [3] * 6 + [24320, 24320])
    assert gen.instance.b == tuple([12160] * 18 + [109478, 109478])


def test_q2_extra_groups_append_composites():
    src = PartitionInstance((1, 1, 2))
    two = generate_q2(src, 2)
    three = generate_q2(src, 3)
    assert three.params.kind == "Q2'"
    assert three.instance.a[:-1] == two.instance.a
    assert three.instance.b[:-1] == two.instance.b
    assert three.instance.a[-1] == 43537
    assert three.instance.b[-1] == 195874
    assert three.labels_a[-1] == COMPOSITE
    assert three.labels_b[-1] == BIG


def test_q2_certificate_reference_indices():
    src = PartitionInstance((1, 1, 2))
    asg = lift_q2_certificate(src, [1, 2], 2)
    group0 = {i + 1 for i, g in enumerate(asg.groups) if g == 0}
    assert group0 == {1, 2, 4, 5, 6, 7, 15, 16, 17, 19}
    gen = generate_q2(src, 2)
    stats = evaluate(gen.instance, asg)
    assert stats.groups[0].p == 43537 and stats.groups[0].q == 195874
    assert all(ratio_value_equal(g, gen.params.target_ratio) for g in stats.groups)


def test_q2_certificate_three_groups():
    src = PartitionInstance((1, 1, 2))
    asg = lift_q2_certificate(src, [1, 2], 3)
    gen = generate_q2(src, 3)
    assert asg.groups[-1] == 2  # the composite item forms its own group
    stats = evaluate(gen.instance, asg)
    assert all(ratio_value_equal(g, gen.params.target_ratio) for g in stats.groups)


def test_q2_certificate_rejects_bad_witnesses():
    src = PartitionInstance((1, 1, 2))
    with pytest.raises(BadWitness):
        lift_q2_certificate(src, [1], 2)  # sums to 1, needs 2
    with pytest.raises(BadWitness):
        lift_q2_certificate(src, [1, 1], 2)  # repeated index
    with pytest.raises(BadWitness):
        lift_q2_certificate(src, [0, 3], 2)  # out of range


# ------------------------------------------------------------- Q4 gadgets


def test_q4_reference_gadget():
    src = ThreePartitionInstance((3,) * 6, 2)
    gen = generate_q4(src)
    p = gen.params
    assert (p.kind, p.K, p.N) == ("Q4", 9, 37)
    assert (p.L, p.M) == (5494, 373592)
    assert gen.instance.a == tuple([1120776] * 6 + [1] * 68 + [3362328] * 2)
    assert gen.instance.b == tuple([373592] * 74 + [13822972] * 2)
    assert gen.instance.totals() == (13449380, 55291752)
    assert (p.target_ratio.p, p.target_ratio.q) == (6724690, 27645876)
    assert ratio_value_equal(p.target_ratio, total_ratio(gen.instance))


def test_q4_certificate_reference_indices():
    src = ThreePartitionInstance((3,) * 6, 2)
    asg = lift_q4_certificate(src, [[1, 2, 3], [4, 5, 6]])
    group0 = {i + 1 for i, g in enumerate(asg.groups) if g == 0}
    assert group0 == {1, 2, 3} | set(range(7, 41)) | {75}
    gen = generate_q4(src)
    stats = evaluate(gen.instance, asg)
    assert all(ratio_value_equal(g, gen.params.target_ratio) for g in stats.groups)


def test_q4_certificate_rejects_bad_witnesses():
    src = ThreePartitionInstance((3,) * 6, 2)
    with pytest.raises(BadWitness):
        lift_q4_certificate(src, [[1, 2], [3, 4, 5]])  # a 2-element group
    with pytest.raises(BadWitness):
        lift_q4_certificate(src, [[1, 2, 3]])  # wrong group count
    with pytest.raises(BadWitness):
        lift_q4_certificate(src, [[1, 2, 3], [3, 4, 5]])  # reused index
    uneven = ThreePartitionInstance((5, 5, 6, 4, 5, 5), 2)
    with pytest.raises(BadWitness):
        lift_q4_certificate(uneven, [[1, 2, 3], [4, 5, 6]])  # triple sums 16 != 15


def test_q4_all_equal_entries_accept_any_triple_split():
    src = ThreePartitionInstance((3,) * 6, 2)
    gen = generate_q4(src)
    asg = lift_q4_certificate(src, [[1, 3, 5], [2, 4, 6]])
    stats = evaluate(gen.instance, asg)
    assert all(ratio_value_equal(g, gen.params.target_ratio) for g in stats.groups)


# ------------------------------------------------------ invariant sweeps


def _check_q2_invariants(src, m):
    gen = generate_q2(src, m)
    p = gen.params
    inst = gen.instance
    n = src.n
    m_eps = 5 * p.N - 4 * n + 1
    assert p.N == 4 * p.K + 1
    assert p.M == m_eps * p.L
    assert m_eps % 2 == 0
    assert math.gcd(p.N, 2 * p.K) == 1
    # label multiplicities and literal calibration values
    assert gen.labels_a.count(SCALED_SOURCE) == n
    assert gen.labels_a.count(DELTA) == p.N + n - 1
    assert gen.labels_a.count(DELTA_3_2) == p.N - 2 * n + 1
    assert gen.labels_a.count(MK) == 2
    assert gen.labels_a.count(COMPOSITE) == m - 2
    assert gen.labels_b.count(UNIT_M) == 2 * p.N
    assert gen.labels_b.count(BIG) == m
    assert gen.labels_a.count(DELTA_3_2) >= 2
    delta_sum = 0
    for ai, la in zip(inst.a, gen.labels_a):
        if la == DELTA:
            assert ai == 2
            delta_sum += ai
        elif la == DELTA_3_2:
            assert ai == 3
            delta_sum += ai
        elif la == MK:
            assert ai == p.M * p.K
    assert delta_sum == m_eps
    # target is the per-group share of the totals
    s, t = inst.totals()
    assert (m * p.target_ratio.p, m * p.target_ratio.q) == (s, t)
    assert ratio_value_equal(p.target_ratio, total_ratio(inst))
    return gen


def partition_sources():
    return st.lists(
        st.integers(min_value=1, max_value=9), min_size=1, max_size=8
    ).map(lambda c: c[:-1] + [c[-1] + 1] if sum(c) % 2 else c)


@given(partition_sources(), st.sampled_from((2, 3, 4)))
@settings(max_examples=60, deadline=None)
def test_q2_invariants_hold_for_random_sources(c, m):
    src = PartitionInstance(tuple(c))
    gen = _check_q2_invariants(src, m)
    # lift every findable equal split and verify the certificate
    k = src.half_sum
    reachable = {0: []}
    for idx, ci in enumerate(src.c, start=1):
        for total, picked in sorted(reachable.items()):
            if total + ci <= k and total + ci not in reachable:
                reachable[total + ci] = picked + [idx]
    if k in reachable:
        asg = lift_q2_certificate(src, reachable[k], m)
        stats = evaluate(gen.instance, asg)
        assert all(ratio_value_equal(g, gen.params.target_ratio) for g in stats.groups)


def three_partition_sources():
    """Solvable-by-construction sources: m shuffled triples around K/3."""

    def build(args):
        m, scale, perturbs, shuffle_seed = args
        entries = []
        for x, y in perturbs:
            entries.extend((4 * scale + x, 4 * scale + y, 4 * scale - x - y))
        order = list(range(3 * m))
        # deterministic Fisher-Yates driven by the drawn seed
        state = shuffle_seed
        for i in range(3 * m - 1, 0, -1):
            state = (state * 6364136223846793005 + 1442695040888963407) % 2**64
            j = state % (i + 1)
            order[i], order[j] = order[j], order[i]
        d = [0] * (3 * m)
        witness = []
        for t in range(m):
            triple = []
            for pos in range(3):
                slot = order[3 * t + pos]
                d[slot] = entries[3 * t + pos]
                triple.append(slot + 1)
            witness.append(triple)
        return d, m, witness

    def perturb_lists(m_and_scale):
        m, scale = m_and_scale
        xy = st.tuples(
            st.integers(min_value=0, max_value=scale - 1),
            st.integers(min_value=0, max_value=scale - 1),
        ).filter(lambda p: p[0] + p[1] < scale)
        return st.tuples(
            st.just(m),
            st.just(scale),
            st.lists(xy, min_size=m, max_size=m),
            st.integers(min_value=0, max_value=2**32),
        )

    return (
        st.tuples(st.integers(min_value=2, max_value=3), st.integers(min_value=2, max_value=5))
        .flatmap(perturb_lists)
        .map(build)
    )


@given(three_partition_sources())
@settings(max_examples=40, deadline=None)
def test_q4_invariants_hold_for_random_sources(data):
    d, m, witness = data
    src = ThreePartitionInstance(tuple(d), m)
    gen = generate_q4(src)
    p = gen.params
    inst = gen.instance
    m_eps = m * p.N - 3 * m
    assert p.N == 2 * m * p.K + 1
    assert p.M == m_eps * p.L
    assert math.gcd(p.N, m * p.K) == 1
    assert gen.labels_a.count(SCALED_SOURCE) == 3 * m
    assert gen.labels_a.count(DELTA) == m_eps
    assert gen.labels_a.count(MK) == m
    assert gen.labels_b.count(UNIT_M) == m * p.N
    assert gen.labels_b.count(BIG) == m
    delta_sum = 0
    for ai, la in zip(inst.a, gen.labels_a):
        if la == DELTA:
            assert ai == 1
            delta_sum += ai
    assert delta_sum == m_eps
    s, t = inst.totals()
    assert (m * p.target_ratio.p, m * p.target_ratio.q) == (s, t)
    assert ratio_value_equal(p.target_ratio, total_ratio(inst))
    asg = lift_q4_certificate(src, witness)
    stats = evaluate(gen.instance, asg)
    assert all(ratio_value_equal(g, p.target_ratio) for g in stats.groups)


def test_generated_instances_validate_as_instances():
    gen = generate_q2(PartitionInstance((3, 5, 2, 4)), 2)
    validate_instance(gen.instance.a, gen.instance.b, gen.instance.m)
    gen4 = generate_q4(ThreePartitionInstance((7, 8, 9, 8, 8, 8), 2))
    validate_instance(gen4.instance.a, gen4.instance.b, gen4.instance.m)
