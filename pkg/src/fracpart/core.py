"""Exact domain model for max-min ratio partitioning.

Items carry positive integer profits and times.  A partition of the items
into m groups scores each group by the ratio (profit sum) / (time sum) and
the partition by the smallest of those ratios; the maximization problem
(MAP) asks for the best partition, the decision problem (FP) asks whether
every group can hit the global ratio S/T exactly.

Everything here is exact.  Entries are arbitrary-precision integers, group
sums are kept as unreduced (numerator, denominator) forms, and values are
compared by cross-multiplication, never by floating point.  Two forms are
equal as forms only componentwise: (1, 1) and (2, 2) share a value but not
a form, and the distinction is load-bearing for the layered solver.  A form
with denominator 0 has value 0 by convention, which makes empty groups
legal (they score 0, so m > n is well-defined with optimum 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ValidationError(ValueError):
    """An input violated a domain invariant."""


class LengthMismatch(ValidationError):
    """Profit and time sequences differ in length."""


class NonPositiveEntry(ValidationError):
    """A profit or time entry is not a positive integer."""


class BadGroupCount(ValidationError):
    """The group count m is not a positive integer."""


class BadAssignment(ValidationError):
    """An assignment has the wrong length or an out-of-range group index."""


@dataclass(frozen=True)
class RatioForm:
    """An unreduced fraction (p, q) of non-negative integers.

    Dataclass equality is form equality; use :func:`ratio_value_equal` for
    value comparison under the p/0 -> 0 convention.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0:
            raise ValidationError(f"ratio form components must be non-negative: ({self.p}, {self.q})")

    def value(self) -> Fraction:
        return Fraction(self.p, self.q) if self.q else Fraction(0)


def _norm(p: int, q: int) -> tuple[int, int]:
    # value of anything over 0 is 0 by convention
    return (p, q) if q else (0, 1)


def value_eq(p: int, q: int, r: int, s: int) -> bool:
    """Exact value equality of p/q and r/s under the p/0 -> 0 convention."""
    p, q = _norm(p, q)
    r, s = _norm(r, s)
    return p * s == r * q


def value_lt(p: int, q: int, r: int, s: int) -> bool:
    """Exact value comparison p/q < r/s under the p/0 -> 0 convention."""
    p, q = _norm(p, q)
    r, s = _norm(r, s)
    return p * s < r * q


def ratio_value_equal(x: RatioForm, y: RatioForm) -> bool:
    """True iff x and y denote the same value (forms may differ)."""
    return value_eq(x.p, x.q, y.p, y.q)


@dataclass(frozen=True)
class Instance:
    """A problem instance: profits a, times b (parallel, positive), m groups."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.a) != len(self.b):
            raise LengthMismatch(f"len(a)={len(self.a)} != len(b)={len(self.b)}")
        if not self.a:
            raise ValidationError("instance needs at least one item")
        for name, seq in (("a", self.a), ("b", self.b)):
            for i, v in enumerate(seq):
                if not isinstance(v, int) or isinstance(v, bool):
                    raise ValidationError(f"{name}[{i}] is not an integer: {v!r}")
                if v < 1:
                    raise NonPositiveEntry(f"{name}[{i}] = {v} must be >= 1")
        if not isinstance(self.m, int) or isinstance(self.m, bool) or self.m < 1:
            raise BadGroupCount(f"m = {self.m!r} must be a positive integer")

    @property
    def n(self) -> int:
        return len(self.a)

    def totals(self) -> tuple[int, int]:
        """(S, T) = (sum of profits, sum of times), computed on demand."""
        return sum(self.a), sum(self.b)


def validate_instance(a: Sequence[int], b: Sequence[int], m: int) -> Instance:
    """Build a validated Instance from raw sequences."""
    return Instance(tuple(a), tuple(b), m)


def total_ratio(inst: Instance) -> RatioForm:
    """The global ratio (S, T); its denominator is always positive."""
    s, t = inst.totals()
    return RatioForm(s, t)


@dataclass(frozen=True)
class Assignment:
    """Item-to-group map: groups[i] is the 0-based group of item i+1."""

    groups: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "groups", tuple(self.groups))

    def __len__(self) -> int:
        return len(self.groups)

    def __iter__(self) -> Iterable[int]:
        return iter(self.groups)


@dataclass(frozen=True)
class GroupStats:
    """Per-group ratio forms plus the exact minimum value (the objective)."""

    groups: tuple[RatioForm, ...]
    min_value: Fraction


def evaluate(inst: Instance, asg: Assignment) -> GroupStats:
    """Score one partition: per-group (sum a, sum b) forms and their min value."""
    g = asg.groups
    if len(g) != inst.n:
        raise BadAssignment(f"assignment length {len(g)} != n = {inst.n}")
    num = [0] * inst.m
    den = [0] * inst.m
    for i, k in enumerate(g):
        if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k < inst.m:
            raise BadAssignment(f"groups[{i}] = {k!r} outside 0..{inst.m - 1}")
        num[k] += inst.a[i]
        den[k] += inst.b[i]
    forms = tuple(RatioForm(p, q) for p, q in zip(num, den))
    return GroupStats(forms, min(f.value() for f in forms))
