"""Exhaustive brute-force reference solvers.

Both entry points enumerate every one of the m**n assignments in
lexicographic order and keep exact ground truth; there is no pruning and no
heuristics, on purpose: this module is the correctness oracle the layered
solver is tested against, so it has to stay obviously correct.  A budget
guard turns hopeless inputs into a clean error before any work happens.

The inner loop works on raw integer pairs and cross-multiplication rather
than Fraction objects; at ~2*10**4 assignments per small instance the
constant factor matters for the randomized test suites.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import Assignment, Instance

DEFAULT_ENUMERATION_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """m**n passed the configured enumeration budget."""


@dataclass(frozen=True)
class OracleResult:
    """Ground truth for one instance; only the queried fields are filled."""

    optimum: Optional[Fraction] = None
    witness: Optional[Assignment] = None
    fp_true: Optional[bool] = None
    fp_witness: Optional[Assignment] = None


def _guard(inst: Instance, budget: int) -> None:
    if inst.m**inst.n > budget:
        raise BudgetExceeded(f"m^n = {inst.m}^{inst.n} exceeds enumeration budget {budget}")


def brute_force_map(inst: Instance, budget: int = DEFAULT_ENUMERATION_BUDGET) -> OracleResult:
    """Exact maximum of the min group ratio; first maximizer in lex order."""
    _guard(inst, budget)
    n, m = inst.n, inst.m
    a, b = inst.a, inst.b
    best_p, best_q = -1, 1  # below every achievable value
    best_asg = None
    for asg in itertools.product(range(m), repeat=n):
        num = [0] * m
        den = [0] * m
        for i in range(n):
            k = asg[i]
            num[k] += a[i]
            den[k] += b[i]
        mp, mq = None, None
        for k in range(m):
            p, q = num[k], den[k]
            if q == 0:
                p, q = 0, 1
            if mp is None or p * mq < mp * q:
                mp, mq = p, q
        if mp * best_q > best_p * mq:  # strict: keeps the lex-first maximizer
            best_p, best_q = mp, mq
            best_asg = asg
    return OracleResult(optimum=Fraction(best_p, best_q), witness=Assignment(best_asg))


def brute_force_fp(inst: Instance, budget: int = DEFAULT_ENUMERATION_BUDGET) -> OracleResult:
    """Does some partition give every group exactly the global ratio S/T?

    Empty groups never qualify (their value is 0, never S/T), so a true
    decision always comes with an all-nonempty witness; the first witness in
    lex order is returned.
    """
    _guard(inst, budget)
    n, m = inst.n, inst.m
    a, b = inst.a, inst.b
    s, t = inst.totals()
    for asg in itertools.product(range(m), repeat=n):
        num = [0] * m
        den = [0] * m
        for i in range(n):
            k = asg[i]
            num[k] += a[i]
            den[k] += b[i]
        ok = True
        for k in range(m):
            if den[k] == 0 or num[k] * t != den[k] * s:
                ok = False
                break
        if ok:
            return OracleResult(fp_true=True, fp_witness=Assignment(asg))
    return OracleResult(fp_true=False, fp_witness=None)
