"""Hardness-gadget generators and certificate lifting.

Two constructions turn classic partition problems into ratio-partition
decision instances that are FP-true exactly when the source is solvable:

* Partition -> FP with m = 2 (plus an m > 2 variant that pads the gadget
  with composite items already sitting at the target ratio), and
* 3-Partition -> FP with m groups, which keeps the source strongly
  NP-complete because every generated entry stays polynomial in the
  source magnitudes.

Both gadgets scale the source entries by a large common divisor M and pad
with small calibration items so that every group of a solving partition
lands on the target ratio exactly.  M is Meps * L where L = ceil(1/eps')
for an irrational eps' defined by a quadratic; L is computed by exact
integer square root, never floating point, because 1/eps' can sit within
1e-3 of an integer even on tiny sources.

Certificate lifting maps a witness of the source problem to an assignment
of the gadget via fixed index formulas (the generated item order is pinned:
scaled sources first, then the small calibration items, then the large
anchor items, then any composites).  Generators validate their sources but
never solve them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    Assignment,
    BadGroupCount,
    Instance,
    NonPositiveEntry,
    RatioForm,
    ValidationError,
)

# a-side provenance labels
SCALED_SOURCE = "SCALED_SOURCE"
DELTA = "DELTA"
DELTA_3_2 = "DELTA_3_2"
MK = "MK"
COMPOSITE = "COMPOSITE"
# b-side provenance labels
UNIT_M = "UNIT_M"
BIG = "BIG"


class OddSourceSum(ValidationError):
    """Partition source with odd total has no equal split."""


class BadWitness(ValidationError):
    """Source witness fails its sum/shape requirements."""


class BadCardinality(ValidationError):
    """3-Partition source must have exactly 3m entries."""


class BadDivisibility(ValidationError):
    """3-Partition source total must be divisible by m."""


class BoundViolation(ValidationError):
    """3-Partition entries must lie strictly between K/4 and K/2."""


@dataclass(frozen=True)
class PartitionInstance:
    """Positive integers with even total; asks for an equal-sum split."""

    c: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", tuple(self.c))
        if not self.c:
            raise ValidationError("partition source needs at least one entry")
        for i, v in enumerate(self.c):
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise NonPositiveEntry(f"c[{i}] = {v!r} must be a positive integer")
        if sum(self.c) % 2:
            raise OddSourceSum(f"sum(c) = {sum(self.c)} is odd")

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def half_sum(self) -> int:
        return sum(self.c) // 2


@dataclass(frozen=True)
class ThreePartitionInstance:
    """3m positive integers, each strictly inside (K/4, K/2), K = sum/m."""

    d: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", tuple(self.d))
        if not isinstance(self.m, int) or isinstance(self.m, bool) or self.m < 1:
            raise BadGroupCount(f"m = {self.m!r} must be a positive integer")
        for i, v in enumerate(self.d):
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise NonPositiveEntry(f"d[{i}] = {v!r} must be a positive integer")
        if len(self.d) != 3 * self.m:
            raise BadCardinality(f"len(d) = {len(self.d)} != 3m = {3 * self.m}")
        if sum(self.d) % self.m:
            raise BadDivisibility(f"sum(d) = {sum(self.d)} not divisible by m = {self.m}")
        k = sum(self.d) // self.m
        for i, v in enumerate(self.d):
            # strict bounds by cross-multiplication; K need not divide by 4
            if not (4 * v > k and 2 * v < k):
                raise BoundViolation(f"d[{i}] = {v} outside ({k}/4, {k}/2)")

    @property
    def triple_sum(self) -> int:
        return sum(self.d) // self.m


@dataclass(frozen=True)
class ReductionParams:
    """Gadget parameters; target_ratio is the per-group target in scaled form."""

    kind: str  # "Q2" | "Q2'" | "Q4"
    K: int
    N: int
    L: int
    M: int
    target_ratio: RatioForm


@dataclass(frozen=True)
class GeneratedInstance:
    """A gadget instance plus its parameters and per-item provenance labels."""

    instance: Instance
    params: ReductionParams
    labels_a: tuple[str, ...]
    labels_b: tuple[str, ...]


def ceil_ratio_with_sqrt(c: int, s: int, two_n: int) -> int:
    """Exact ceil((c + sqrt(c*c + s)) / two_n) for positive integers.

    With u = isqrt(c*c + s): if u*u == c*c + s the value is rational and
    plain ceiling division applies.  Otherwise the value lies strictly
    between (c+u)/two_n and (c+u+1)/two_n, consecutive multiples of
    1/two_n, so no integer sits strictly between it and (c+u)/two_n and
    the ceiling is floor((c+u)/two_n) + 1.
    """
    if c < 1 or s < 1 or two_n < 1:
        raise ValidationError("ceil_ratio_with_sqrt needs positive arguments")
    radicand = c * c + s
    u = math.isqrt(radicand)
    if u * u == radicand:
        return -((-(c + u)) // two_n)
    return (c + u) // two_n + 1


def generate_q2(src: PartitionInstance, m: int = 2) -> GeneratedInstance:
    """Partition -> FP gadget with m groups (m == 2 plain, m > 2 padded).

    Layout (1-based): scaled sources at 1..n, value-2 calibration items at
    n+1..N+2n-1, value-3 calibration items at N+2n..2N, two anchor items
    at 2N+1 and 2N+2, and for m > 2 one composite per extra group at
    2N+3..2N+m, each already equal to the target ratio.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 2:
        raise BadGroupCount(f"m = {m!r} must be an integer >= 2")
    n = src.n
    big_k = src.half_sum
    big_n = 4 * big_k + 1
    c = 4 * big_n**3 + 2 * big_k * big_n - big_n**2 - 1
    ell = ceil_ratio_with_sqrt(c, 16 * big_n**3, 2 * big_n)
    m_eps = 5 * big_n - 4 * n + 1  # even: equals 20K + 6 - 4n
    big_m = m_eps * ell
    composite_a = 2 * big_m * big_k + m_eps // 2
    composite_b = 2 * big_m * big_n + m_eps

    a = (
        [big_m * ci for ci in src.c]
        + [2] * (big_n + n - 1)
        + [3] * (big_n - 2 * n + 1)
        + [big_m * big_k] * 2
        + [composite_a] * (m - 2)
    )
    b = (
        [big_m] * (2 * big_n)
        + [big_m * big_n + m_eps] * 2
        + [composite_b] * (m - 2)
    )
    labels_a = (
        (SCALED_SOURCE,) * n
        + (DELTA,) * (big_n + n - 1)
        + (DELTA_3_2,) * (big_n - 2 * n + 1)
        + (MK,) * 2
        + (COMPOSITE,) * (m - 2)
    )
    labels_b = (UNIT_M,) * (2 * big_n) + (BIG,) * m
    params = ReductionParams(
        kind="Q2" if m == 2 else "Q2'",
        K=big_k,
        N=big_n,
        L=ell,
        M=big_m,
        target_ratio=RatioForm(composite_a, composite_b),
    )
    return GeneratedInstance(Instance(tuple(a), tuple(b), m), params, labels_a, labels_b)


def lift_q2_certificate(
    src: PartitionInstance, witness: Iterable[int], m: int = 2
) -> Assignment:
    """Map an equal-sum split of the source onto the gadget.

    `witness` holds 1-based source indices whose entries sum to half the
    source total.  Group 0 gets the matching scaled sources, a balancing
    run of each calibration block, and the first anchor; group 1 gets the
    rest of the two-group core; for m > 2 each composite item is its own
    group.
    """
    picked = list(witness)
    for i in picked:
        if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= src.n:
            raise BadWitness(f"witness index {i!r} outside 1..{src.n}")
    if len(set(picked)) != len(picked):
        raise BadWitness("witness repeats an index")
    picked.sort()
    if sum(src.c[i - 1] for i in picked) != src.half_sum:
        raise BadWitness(
            f"witness sums to {sum(src.c[i - 1] for i in picked)}, needs {src.half_sum}"
        )
    n = src.n
    big_n = 4 * src.half_sum + 1
    n1 = len(picked)
    n2 = n - n1
    group0 = set(picked)
    group0.update(range(n + 1, (big_n - 1) // 2 + 3 * n2 + 1))
    group0.update(range(big_n + 2 * n, (3 * big_n - 1) // 2 + 2 * n1 + 1))
    group0.add(2 * big_n + 1)
    total_items = 2 * big_n + m
    groups = [1] * total_items
    for i in group0:
        groups[i - 1] = 0
    for j, i in enumerate(range(2 * big_n + 3, 2 * big_n + m + 1)):
        groups[i - 1] = 2 + j
    return Assignment(tuple(groups))


def generate_q4(src: ThreePartitionInstance) -> GeneratedInstance:
    """3-Partition -> FP gadget with m groups.

    Layout (1-based): scaled sources at 1..3m, value-1 calibration items
    at 3m+1..mN, and m anchor items at mN+1..mN+m.  Entry magnitudes stay
    polynomial in the source values, preserving strong NP-completeness.
    """
    m = src.m
    big_k = src.triple_sum
    big_n = 2 * m * big_k + 1
    c = 2 * m * big_n**3 + m * big_k * big_n - 1
    ell = ceil_ratio_with_sqrt(c, 8 * m * big_n**3, 2 * big_n)
    m_eps = m * big_n - 3 * m
    big_m = m_eps * ell

    a = [big_m * di for di in src.d] + [1] * m_eps + [big_m * big_k] * m
    b = [big_m] * (m * big_n) + [big_m * big_n + m_eps] * m
    labels_a = (SCALED_SOURCE,) * (3 * m) + (DELTA,) * m_eps + (MK,) * m
    labels_b = (UNIT_M,) * (m * big_n) + (BIG,) * m
    inst = Instance(tuple(a), tuple(b), m)
    s_total, t_total = inst.totals()
    # both totals are divisible by m by construction
    params = ReductionParams(
        kind="Q4",
        K=big_k,
        N=big_n,
        L=ell,
        M=big_m,
        target_ratio=RatioForm(s_total // m, t_total // m),
    )
    return GeneratedInstance(inst, params, labels_a, labels_b)


def lift_q4_certificate(
    src: ThreePartitionInstance, witness: Sequence[Iterable[int]]
) -> Assignment:
    """Map a triple partition of the source onto the gadget.

    `witness` lists m groups of 1-based source indices; each group must
    have exactly three indices summing to the per-triple target, and the
    groups must cover 1..3m without overlap.  Gadget group j-1 receives
    the matching scaled sources, the j-th run of N-3 calibration items,
    and the j-th anchor.
    """
    m = src.m
    triples = [list(g) for g in witness]
    if len(triples) != m:
        raise BadWitness(f"witness has {len(triples)} groups, needs {m}")
    seen: set[int] = set()
    for t in triples:
        for i in t:
            if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= 3 * m:
                raise BadWitness(f"witness index {i!r} outside 1..{3 * m}")
        if len(set(t)) != 3 or len(t) != 3:
            raise BadWitness(f"witness group {t} does not have exactly 3 distinct indices")
        if seen.intersection(t):
            raise BadWitness(f"witness reuses indices {sorted(seen.intersection(t))}")
        seen.update(t)
        got = sum(src.d[i - 1] for i in t)
        if got != src.triple_sum:
            raise BadWitness(f"witness group {t} sums to {got}, needs {src.triple_sum}")
    big_n = 2 * m * src.triple_sum + 1
    groups = [0] * (m * big_n + m)
    for j, t in enumerate(triples, start=1):
        for i in t:
            groups[i - 1] = j - 1
        start = 3 * m + (j - 1) * (big_n - 3) + 1
        for i in range(start, start + big_n - 3):
            groups[i - 1] = j - 1
        groups[m * big_n + j - 1] = j - 1
    return Assignment(tuple(groups))
