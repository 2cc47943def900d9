"""Command-line front end: solve, check, generate, random, bench.

Every command emits canonical single-line JSON (or CSV for bench) so that
identical inputs and flags reproduce identical bytes; decisions are data,
not exit codes.  Exit codes separate real failures from answers:

* 0 — command ran; any decision (including FP false) is in the output,
* 2 — invalid flags, unparsable files, or domain validation errors,
* 3 — an enumeration or state budget was exceeded,
* 4 — internal cross-check failed (generated certificate does not verify,
      or a bench row disagrees with the oracle); this is a defect signal.

Random instances come from an explicit SplitMix64 stream so the same seed
reproduces the same bytes on any platform; each drawn entry is
(output mod max_value) + 1, profits first, then times.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from . import io as fio
from .core import (
    RatioForm,
    ValidationError,
    evaluate,
    ratio_value_equal,
    total_ratio,
    validate_instance,
)
from .dp import DEFAULT_STATE_BUDGET, MemoryBudgetExceeded, dp_fp, dp_map
from .oracle import (
    DEFAULT_ENUMERATION_BUDGET,
    BudgetExceeded,
    brute_force_fp,
    brute_force_map,
)
from .reductions import (
    PartitionInstance,
    ThreePartitionInstance,
    generate_q2,
    generate_q4,
    lift_q2_certificate,
    lift_q4_certificate,
)

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Pinned 64-bit generator; identical streams on every platform."""

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next_raw(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def draw(self, max_value: int) -> int:
        """An entry in 1..max_value."""
        return self.next_raw() % max_value + 1


def random_instance(rng: SplitMix64, n: int, m: int, max_value: int):
    """Profits first, then times, drawn in index order from one stream."""
    a = [rng.draw(max_value) for _ in range(n)]
    b = [rng.draw(max_value) for _ in range(n)]
    return validate_instance(a, b, m)


def _print_warnings(warnings: Sequence[str]) -> None:
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)


def _emit_bytes(data: bytes, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _fraction_doc(num: int, den: int) -> dict:
    return {"num": str(num), "den": str(den)}


def cmd_solve(args: argparse.Namespace) -> int:
    if args.state_budget < 1:
        raise ValidationError("--state-budget must be >= 1")
    loaded = fio.read_instance(args.input)
    _print_warnings(loaded.warnings)
    inst = loaded.instance
    canonicalize = args.canonicalize == "on"
    doc: dict = {"problem": args.problem, "algorithm": args.algorithm}
    if args.algorithm == "dp":
        solver = dp_map if args.problem == "map" else dp_fp
        report = solver(inst, canonicalize=canonicalize, state_budget=args.state_budget)
        witness = report.witness
        states = report.states_explored
        elapsed_ms = int(round(report.elapsed_s * 1000))
        if args.problem == "map":
            doc["value"] = _fraction_doc(report.optimum.numerator, report.optimum.denominator)
        else:
            doc["decision"] = report.decision
    else:
        started = time.perf_counter()
        if args.problem == "map":
            result = brute_force_map(inst)
            doc["value"] = _fraction_doc(result.optimum.numerator, result.optimum.denominator)
            witness = result.witness
        else:
            result = brute_force_fp(inst)
            doc["decision"] = result.fp_true
            witness = result.fp_witness
        states = inst.m**inst.n  # the enumerated space
        elapsed_ms = int(round((time.perf_counter() - started) * 1000))
    doc["assignment"] = list(witness.groups) if witness is not None else None
    doc["statesExplored"] = states
    doc["elapsedMs"] = elapsed_ms
    _emit_bytes(fio.canonical_bytes(doc), args.output)
    return 0


def _parse_target(text: str) -> RatioForm:
    parts = text.split("/")
    if len(parts) != 2 or not parts[0].strip().isdigit() or not parts[1].strip().isdigit():
        raise ValidationError(f"target must look like p/q with non-negative integers: {text!r}")
    return RatioForm(int(parts[0]), int(parts[1]))


def cmd_check(args: argparse.Namespace) -> int:
    loaded = fio.read_instance(args.input)
    _print_warnings(loaded.warnings)
    loaded_asg = fio.read_assignment(args.assignment)
    _print_warnings(loaded_asg.warnings)
    inst = loaded.instance
    stats = evaluate(inst, loaded_asg.assignment)
    overall = total_ratio(inst)
    doc: dict = {
        "groups": [_fraction_doc(g.p, g.q) for g in stats.groups],
        "min": _fraction_doc(stats.min_value.numerator, stats.min_value.denominator),
        "equalsOverall": all(ratio_value_equal(g, overall) for g in stats.groups),
    }
    if args.target is not None:
        target = _parse_target(args.target)
        doc["equalsTarget"] = all(ratio_value_equal(g, target) for g in stats.groups)
    _emit_bytes(fio.canonical_bytes(doc), args.output)
    return 0


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"{what}: expected comma-separated integers: {text!r}") from exc


def cmd_generate(args: argparse.Namespace) -> int:
    if args.source == "partition":
        src = PartitionInstance(tuple(_parse_int_list(args.c, "--c")))
        gen = generate_q2(src, args.m)
        lifted = None
        if args.witness is not None:
            lifted = lift_q2_certificate(src, _parse_int_list(args.witness, "--witness"), args.m)
    else:
        src = ThreePartitionInstance(tuple(_parse_int_list(args.d, "--d")), args.m)
        gen = generate_q4(src)
        lifted = None
        if args.witness is not None:
            triples = [
                _parse_int_list(part, "--witness") for part in args.witness.split(";")
            ]
            lifted = lift_q4_certificate(src, triples)
    fio.write_instance(
        gen.instance, gen.params, (gen.labels_a, gen.labels_b), args.output
    )
    if lifted is not None:
        stats = evaluate(gen.instance, lifted)
        if not all(ratio_value_equal(g, gen.params.target_ratio) for g in stats.groups):
            print(
                "defect: lifted certificate does not hit the target ratio in every group",
                file=sys.stderr,
            )
            return 4
        if args.certificate is not None:
            fio.write_assignment(lifted, args.certificate)
    return 0


def cmd_random(args: argparse.Namespace) -> int:
    for name in ("n", "m", "max_value"):
        if getattr(args, name) < 1:
            raise ValidationError(f"--{name.replace('_', '-')} must be >= 1")
    if not 0 <= args.seed <= _MASK64:
        raise ValidationError("--seed must be an unsigned 64-bit integer")
    rng = SplitMix64(args.seed)
    inst = random_instance(rng, args.n, args.m, args.max_value)
    fio.write_instance(inst, path=args.output)
    return 0


def _parse_n_range(text: str) -> tuple[int, int]:
    parts = text.split("..")
    if len(parts) != 2:
        raise ValidationError(f"--n-range must look like A..B: {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValidationError(f"--n-range must look like A..B: {text!r}") from exc
    if lo < 1 or hi < lo:
        raise ValidationError(f"--n-range needs 1 <= A <= B: {text!r}")
    return lo, hi


def cmd_bench(args: argparse.Namespace) -> int:
    lo, hi = _parse_n_range(args.n_range)
    m_set = _parse_int_list(args.m_set, "--m-set")
    if not m_set or any(m < 1 for m in m_set):
        raise ValidationError("--m-set needs positive integers")
    if args.max_value < 1 or args.trials < 0:
        raise ValidationError("--max-value must be >= 1 and --trials >= 0")
    rng = SplitMix64(args.seed)
    lines = ["n,m,S,T,dpStates,dpMs,bruteMs,agree"]
    all_agree = True
    for n in range(lo, hi + 1):
        for m in m_set:
            for _ in range(args.trials):
                inst = random_instance(rng, n, m, args.max_value)
                if m**n > DEFAULT_ENUMERATION_BUDGET:
                    raise BudgetExceeded(
                        f"bench row n={n} m={m} exceeds the oracle budget"
                    )
                s_total, t_total = inst.totals()
                report = dp_map(inst)
                started = time.perf_counter()
                truth = brute_force_map(inst)
                brute_ms = int(round((time.perf_counter() - started) * 1000))
                agree = report.optimum == truth.optimum
                all_agree = all_agree and agree
                lines.append(
                    f"{n},{m},{s_total},{t_total},{report.states_explored},"
                    f"{int(round(report.elapsed_s * 1000))},{brute_ms},"
                    f"{'true' if agree else 'false'}"
                )
    _emit_bytes(("\n".join(lines) + "\n").encode("utf-8"), args.output)
    if not all_agree:
        print("defect: dp disagreed with the oracle on at least one row", file=sys.stderr)
        return 4
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracpart",
        description="Exact solvers and gadget generators for ratio partitioning.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one instance file")
    p_solve.add_argument("--problem", choices=("map", "fp"), required=True)
    p_solve.add_argument("--algorithm", choices=("dp", "brute"), required=True)
    p_solve.add_argument("--input", required=True)
    p_solve.add_argument("--output")
    p_solve.add_argument("--canonicalize", choices=("on", "off"), default="on")
    p_solve.add_argument("--state-budget", type=int, default=DEFAULT_STATE_BUDGET)
    p_solve.set_defaults(func=cmd_solve)

    p_check = sub.add_parser("check", help="evaluate an assignment against an instance")
    p_check.add_argument("--input", required=True)
    p_check.add_argument("--assignment", required=True)
    p_check.add_argument("--target", help="per-group target ratio as p/q")
    p_check.add_argument("--output")
    p_check.set_defaults(func=cmd_check)

    p_gen = sub.add_parser("generate", help="build a hardness gadget instance")
    gen_sub = p_gen.add_subparsers(dest="source", required=True)
    g_part = gen_sub.add_parser("partition", help="from a Partition source")
    g_part.add_argument("--c", required=True, help="comma-separated source entries")
    g_part.add_argument("--m", type=int, default=2)
    g_part.add_argument("--witness", help="comma-separated 1-based indices summing to K")
    g_part.add_argument("--output", required=True)
    g_part.add_argument("--certificate")
    g_part.set_defaults(func=cmd_generate)
    g_three = gen_sub.add_parser("threepartition", help="from a 3-Partition source")
    g_three.add_argument("--d", required=True, help="comma-separated source entries (3m)")
    g_three.add_argument("--m", type=int, required=True)
    g_three.add_argument(
        "--witness", help="semicolon-separated triples, e.g. '1,2,3;4,5,6'"
    )
    g_three.add_argument("--output", required=True)
    g_three.add_argument("--certificate")
    g_three.set_defaults(func=cmd_generate)

    p_rand = sub.add_parser("random", help="draw a reproducible random instance")
    p_rand.add_argument("--n", type=int, required=True)
    p_rand.add_argument("--m", type=int, required=True)
    p_rand.add_argument("--max-value", type=int, required=True)
    p_rand.add_argument("--seed", type=int, required=True)
    p_rand.add_argument("--output", required=True)
    p_rand.set_defaults(func=cmd_random)

    p_bench = sub.add_parser("bench", help="dp vs oracle timing table (CSV)")
    p_bench.add_argument("--n-range", required=True, help="inclusive range A..B")
    p_bench.add_argument("--m-set", required=True, help="comma-separated group counts")
    p_bench.add_argument("--max-value", type=int, required=True)
    p_bench.add_argument("--trials", type=int, required=True)
    p_bench.add_argument("--seed", type=int, required=True)
    p_bench.add_argument("--output", required=True)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (fio.ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceeded, MemoryBudgetExceeded) as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
