"""Layered pseudo-polynomial solvers for the ratio-partition problems.

The state after processing items 1..i is the tuple of m-1 running
(profit, time) pair sums for the tracked groups; the last group is
implicit and absorbs everything unplaced.  The final item is never
transitioned at all: group labels are interchangeable, so some optimal
partition always has item n in the implicit group, and the layer index
therefore stops at n-1.  Layer i holds every state reachable by some
placement of items 1..i, deduplicated; membership of a state in layer i
is exactly the boolean reachability table of the dense formulation, with
only the reachable entries materialized.

A state's score is the minimum over its tracked pair values and the
remainder pair (S - sum p, T - sum q), using the q == 0 -> value 0
convention.  The decision problem accepts a state whose tracked pairs
and remainder all equal S/T in value; because the stay transition
preserves every state, layers only grow, and the maximization scan over
the final layer alone is equivalent to scanning every layer.

Two engines share these semantics:

* sparse (any m >= 1): dict-backed layers, one parent edge per state,
  witness by backward edge collection plus forward replay;
* dense (m == 2, grid (S+1) x (T+1) within DENSE_CELL_LIMIT cells):
  numpy boolean reachability over the flattened grid plus a
  first-reaching-item index per cell; this is the dense table itself.

Engine choice never changes the decision, the optimum, or the explored
state count; witnesses may differ between engines but each engine is
deterministic and every witness re-evaluates to the reported result.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .core import Assignment, Instance

DpState = tuple[tuple[int, int], ...]
# parent edge: (predecessor state, tracked-group choice k) with k = None for stay
ParentEdge = Optional[tuple[DpState, Optional[int]]]

DEFAULT_STATE_BUDGET = 50_000_000
DENSE_CELL_LIMIT = 1 << 26


class MemoryBudgetExceeded(RuntimeError):
    """Cumulative state count passed the configured budget."""


@dataclass(frozen=True)
class DpLayer:
    """States reachable after index items, each with its first parent edge."""

    index: int
    states: dict[DpState, ParentEdge]


@dataclass(frozen=True)
class DpReport:
    """Result of one solver run; witness re-evaluates to decision/optimum."""

    decision: Optional[bool] = None
    optimum: Optional[Fraction] = None
    witness: Optional[Assignment] = None
    states_explored: int = 0
    layers_built: int = 0
    elapsed_s: float = 0.0
    engine: str = "sparse"


def build_layers(
    inst: Instance,
    stop_probe: Optional[Callable[[DpState], bool]] = None,
    *,
    canonicalize: bool = True,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> list[DpLayer]:
    """Materialize layers 0..n-1 of reachable states (sparse engine).

    From each state of layer i-1, item i either stays (goes to the
    implicit group, state unchanged) or joins tracked group k.  States of
    a layer are deduplicated; the first parent edge wins, under the fixed
    iteration order: states sorted ascending, choices stay then k = 0,
    1, ....  With canonicalize the m-1 pairs of every emitted state are
    kept sorted, collapsing group-relabeling symmetry.

    If stop_probe is given, every layer (including layer 0) is scanned in
    sorted state order after construction and the build halts at the first
    layer containing an accepting state.
    """
    tracked = inst.m - 1
    zero: DpState = ((0, 0),) * tracked
    layers = [DpLayer(0, {zero: None})]
    if stop_probe is not None and stop_probe(zero):
        return layers
    explored = 0
    for i in range(1, inst.n):
        ai, bi = inst.a[i - 1], inst.b[i - 1]
        prev = layers[-1].states
        nxt: dict[DpState, ParentEdge] = {}
        for state in sorted(prev):
            if state not in nxt:
                nxt[state] = (state, None)
            for k in range(tracked):
                pairs = list(state)
                p, q = pairs[k]
                pairs[k] = (p + ai, q + bi)
                if canonicalize:
                    pairs.sort()
                cand = tuple(pairs)
                if cand not in nxt:
                    nxt[cand] = (state, k)
        explored += len(nxt)
        if explored > state_budget:
            raise MemoryBudgetExceeded(
                f"{explored} states after layer {i} exceeds budget {state_budget}"
            )
        layers.append(DpLayer(i, nxt))
        if stop_probe is not None and any(stop_probe(s) for s in sorted(nxt)):
            break
    return layers


def _states_explored(layers: list[DpLayer]) -> int:
    # layer 0 is the free root; the budget bound counts layers 1..n-1
    return sum(len(layer.states) for layer in layers[1:])


def _traceback_sparse(inst: Instance, layers: list[DpLayer], state: DpState) -> Assignment:
    """Reconstruct an assignment reaching `state` in the last built layer.

    Walk parent edges back to layer 0 collecting (item, parent, k) for the
    add-steps, then replay forward.  Canonicalization makes the recorded k
    a position in the sorted parent rather than a group id, so the replay
    matches the parent's chosen pair against the actual per-group sums
    (their multisets coincide at every step) and takes the least matching
    group.  Items with stay edges, and items past the last built layer,
    belong to the implicit group m-1.
    """
    assignment = [inst.m - 1] * inst.n
    steps: list[tuple[int, DpState, int]] = []
    cur = state
    for i in range(layers[-1].index, 0, -1):
        edge = layers[i].states[cur]
        parent, k = edge
        if k is not None:
            steps.append((i, parent, k))
        cur = parent
    actual = [(0, 0)] * (inst.m - 1)
    for i, parent, k in reversed(steps):
        want = parent[k]
        g = actual.index(want)
        assignment[i - 1] = g
        actual[g] = (want[0] + inst.a[i - 1], want[1] + inst.b[i - 1])
    return Assignment(tuple(assignment))


def _fp_probe(s_total: int, t_total: int) -> Callable[[DpState], bool]:
    def probe(state: DpState) -> bool:
        sp = 0
        sq = 0
        for p, q in state:
            if q == 0 or p * t_total != q * s_total:
                return False
            sp += p
            sq += q
        # remainder denominator is positive: item n never joins a tracked group
        return (s_total - sp) * t_total == (t_total - sq) * s_total

    return probe


def _state_score(state: DpState, s_total: int, t_total: int) -> tuple[int, int]:
    """Min over tracked pair values and the remainder value, as a (p, q) pair
    with positive q (zero-denominator pairs normalized to (0, 1))."""
    sp = 0
    sq = 0
    mp, mq = None, None
    for p, q in state:
        sp += p
        sq += q
        if q == 0:
            p, q = 0, 1
        if mp is None or p * mq < mp * q:
            mp, mq = p, q
    rp, rq = s_total - sp, t_total - sq
    if rq == 0:
        rp, rq = 0, 1
    if mp is None or rp * mq < mp * rq:
        mp, mq = rp, rq
    return mp, mq


# ---------------------------------------------------------------- dense engine


def _dense_cells(inst: Instance) -> int:
    s_total, t_total = inst.totals()
    return (s_total + 1) * (t_total + 1)


def _dense_build(
    inst: Instance,
    probe_targets: Optional[np.ndarray],
    state_budget: int,
) -> tuple[np.ndarray, np.ndarray, int, int, int]:
    """Grid reachability for m == 2.

    Returns (reach, first, explored, layers_built, hit) where `first`
    holds, per cell, the item index that first reached it (0 for the
    origin) and `hit` is the smallest accepting flat index, or -1.  Cells
    are flattened as p * (T+1) + q, so ascending flat order is ascending
    (p, q) lexicographic order, matching the sparse engine's state sort.
    """
    s_total, t_total = inst.totals()
    width = t_total + 1
    size = (s_total + 1) * width
    reach = np.zeros(size, dtype=bool)
    reach[0] = True
    first = np.zeros(size, dtype=np.int32)
    explored = 0
    layers_built = 1
    # layer 0 never accepts: the lone state (0, 0) has value 0, not S/T
    for i in range(1, inst.n):
        d = inst.a[i - 1] * width + inst.b[i - 1]
        shifted = np.zeros(size, dtype=bool)
        shifted[d:] = reach[: size - d]
        new = shifted & ~reach
        first[new] = i
        reach |= new
        explored += int(np.count_nonzero(reach))
        if explored > state_budget:
            raise MemoryBudgetExceeded(
                f"{explored} states after layer {i} exceeds budget {state_budget}"
            )
        layers_built += 1
        if probe_targets is not None and probe_targets.size:
            present = probe_targets[reach[probe_targets]]
            if present.size:
                return reach, first, explored, layers_built, int(present.min())
    return reach, first, explored, layers_built, -1


def _dense_traceback(inst: Instance, first: np.ndarray, cell: int) -> Assignment:
    width = inst.totals()[1] + 1
    assignment = [1] * inst.n
    while cell:
        i = int(first[cell])
        assignment[i - 1] = 0
        cell -= inst.a[i - 1] * width + inst.b[i - 1]
    return Assignment(tuple(assignment))


def _dense_fp(inst: Instance, state_budget: int) -> tuple[bool, Optional[Assignment], int, int]:
    s_total, t_total = inst.totals()
    width = t_total + 1
    g = math.gcd(s_total, t_total)
    base_p, base_q = s_total // g, t_total // g
    targets = np.array(
        [j * (base_p * width + base_q) for j in range(1, g + 1)], dtype=np.int64
    )
    reach, first, explored, layers_built, hit = _dense_build(inst, targets, state_budget)
    if hit < 0:
        return False, None, explored, layers_built
    return True, _dense_traceback(inst, first, hit), explored, layers_built


def _dense_map(
    inst: Instance, state_budget: int
) -> tuple[Fraction, Assignment, int, int]:
    s_total, t_total = inst.totals()
    width = t_total + 1
    reach, first, explored, layers_built, _ = _dense_build(inst, None, state_budget)
    cells = np.nonzero(reach)[0]
    p = (cells // width).astype(np.int64)
    q = (cells % width).astype(np.int64)
    # float prefilter: candidate band around the max, then exact re-check.
    # p/q is correctly rounded (entries <= 2**26 are float-exact), so the
    # true argmax sits within relative 3e-16 of the float max; the 1e-11
    # band is orders of magnitude wider.
    with np.errstate(divide="ignore", invalid="ignore"):
        tracked = np.where(q > 0, p / np.maximum(q, 1), 0.0)
    remainder = (s_total - p) / (t_total - q)  # q < T on every reachable cell
    score = np.minimum(tracked, remainder)
    vmax = float(score.max())
    band = vmax - (abs(vmax) * 1e-11 + 1e-11)
    candidates = cells[score >= band]
    best: Optional[tuple[int, int]] = None
    best_cell = -1
    for flat in candidates:
        flat = int(flat)
        cp, cq = divmod(flat, width)
        value = _state_score(((cp, cq),), s_total, t_total)
        if best is None or value[0] * best[1] > best[0] * value[1]:
            best = value
            best_cell = flat
    assert best is not None
    return (
        Fraction(best[0], best[1]),
        _dense_traceback(inst, first, best_cell),
        explored,
        layers_built,
    )


# ------------------------------------------------------------------- frontends


def _pick_engine(inst: Instance, engine: str) -> str:
    if engine not in ("auto", "sparse", "dense"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "dense":
        if inst.m != 2:
            raise ValueError("dense engine requires m == 2")
        if _dense_cells(inst) > DENSE_CELL_LIMIT:
            raise MemoryBudgetExceeded(
                f"dense grid needs {_dense_cells(inst)} cells, over {DENSE_CELL_LIMIT}"
            )
        return "dense"
    if engine == "auto" and inst.m == 2 and _dense_cells(inst) <= DENSE_CELL_LIMIT:
        return "dense"
    return "sparse"


def dp_fp(
    inst: Instance,
    *,
    canonicalize: bool = True,
    state_budget: int = DEFAULT_STATE_BUDGET,
    engine: str = "auto",
) -> DpReport:
    """Decide whether every group can equal S/T exactly, with witness.

    A state is accepting when all tracked pairs have positive denominator
    and value S/T and the remainder pair does too; the layer scan stops at
    the first accepting layer.  Untracked items (stay steps and items past
    the stopping layer) go to group m-1 in the witness.
    """
    started = time.perf_counter()
    s_total, t_total = inst.totals()
    chosen = _pick_engine(inst, engine)
    if chosen == "dense":
        decision, witness, explored, layers_built = _dense_fp(inst, state_budget)
    else:
        probe = _fp_probe(s_total, t_total)
        layers = build_layers(
            inst, probe, canonicalize=canonicalize, state_budget=state_budget
        )
        explored = _states_explored(layers)
        layers_built = len(layers)
        hit = next((s for s in sorted(layers[-1].states) if probe(s)), None)
        decision = hit is not None
        witness = _traceback_sparse(inst, layers, hit) if hit is not None else None
    return DpReport(
        decision=decision,
        witness=witness,
        states_explored=explored,
        layers_built=layers_built,
        elapsed_s=time.perf_counter() - started,
        engine=chosen,
    )


def dp_map(
    inst: Instance,
    *,
    canonicalize: bool = True,
    state_budget: int = DEFAULT_STATE_BUDGET,
    engine: str = "auto",
) -> DpReport:
    """Maximize the minimum group ratio; exact optimum plus a witness.

    Only the final layer is scanned: the stay transition makes layers
    monotone, so it contains every reachable state.  Scores compare by
    cross-multiplication; the scan keeps the first maximizer in sorted
    state order.
    """
    started = time.perf_counter()
    s_total, t_total = inst.totals()
    chosen = _pick_engine(inst, engine)
    if chosen == "dense":
        optimum, witness, explored, layers_built = _dense_map(inst, state_budget)
    else:
        layers = build_layers(
            inst, None, canonicalize=canonicalize, state_budget=state_budget
        )
        explored = _states_explored(layers)
        layers_built = len(layers)
        best: Optional[tuple[int, int]] = None
        best_state: Optional[DpState] = None
        for state in sorted(layers[-1].states):
            value = _state_score(state, s_total, t_total)
            if best is None or value[0] * best[1] > best[0] * value[1]:
                best = value
                best_state = state
        assert best is not None and best_state is not None
        optimum = Fraction(best[0], best[1])
        witness = _traceback_sparse(inst, layers, best_state)
    return DpReport(
        optimum=optimum,
        witness=witness,
        states_explored=explored,
        layers_built=layers_built,
        elapsed_s=time.perf_counter() - started,
        engine=chosen,
    )
