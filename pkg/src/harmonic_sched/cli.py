"""Command-line front end.

Exit status: 0 on success, 1 when ``verify`` finds a non-optimal scheme,
2 on usage errors or invalid input.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .core import ProblemSpec, SchemeError, matrix_to_scheme, to_rational
from .cyclic import build_cyclic, extend_to_p, gcd_reduce
from .euclid import (
    AGENT_ORDERS,
    build_euclidean,
    euclid_spec,
    euclid_trace,
    fibonacci_analysis,
    halt_number,
    halt_statistics,
    stage_lengths,
)
from .harmonic import CapacityError, atomic_unit, irreducible_representation, optimum_time, split_search
from .io import (
    FormatError,
    dumps,
    load_matrix,
    load_scheme,
    load_spec,
    matrix_to_csv,
    scheme_to_dict,
    spec_to_dict,
    type_matrix_csv,
    write_matrix,
)
from .timing import optimal_time_two_type, percent, significant, total_time
from .verifier import type_matrix, validate


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _decimal(value: Fraction) -> str:
    return significant(value, 5)


def _plan(args: argparse.Namespace) -> tuple[dict[str, Any], Any, Any]:
    """Return (summary, matrix, spec)."""
    if args.strategy == "euclid":
        if args.r1 is None or args.r2 is None:
            raise UsageError("plan --strategy euclid needs --r1 and --r2")
        spec = euclid_spec(args.r1, args.r2, args.agent_order, (1, args.T))
        matrix, reports = build_euclidean(args.r1, args.r2, args.agent_order, (1, args.T))
        trace = euclid_trace(args.r1, args.r2)
        summary: dict[str, Any] = {
            "strategy": "euclid",
            "r1": args.r1,
            "r2": args.r2,
            "agent_order": args.agent_order,
            "a_sequence": trace.a_sequence,
            "stage_lengths": stage_lengths(trace),
            "halts": halt_number(trace),
            "halt_instants": matrix.halt_columns(),
            "stages": [
                {
                    "stage": r.stage,
                    "length_au": r.length_au,
                    "halts_at": list(r.halts_at),
                    "passive_record": list(r.passive_record),
                    "active_record": list(r.active_record),
                    "blocks": [list(b) for b in r.blocks],
                }
                for r in reports
            ],
        }
    else:
        if args.spec is None:
            raise UsageError("plan --strategy cyclic needs --spec")
        spec = load_spec(args.spec)
        summary = {"strategy": "cyclic"}
        if args.reduce_gcd:
            if spec.objects != spec.n:
                raise UsageError("--reduce-gcd needs objects equal to the agent count")
            spec, d = gcd_reduce(spec)
            summary["gcd"] = d
        base_spec = ProblemSpec(spec.classes)
        matrix = build_cyclic(base_spec)
        summary["halts"] = len(matrix.halt_columns())
        summary["halt_instants"] = matrix.halt_columns()
        if spec.objects != spec.n:
            plan = extend_to_p(spec, matrix_to_scheme(matrix))
            summary["objects"] = plan.objects
            summary["rounds"] = plan.rounds
            summary["remainder"] = plan.remainder
            summary["total_time"] = plan.total_time
            if plan.remainder_scheme is not None:
                summary["remainder_scheme"] = scheme_to_dict(plan.remainder_scheme)
        spec = base_spec
    h = optimum_time(spec)
    summary.update(
        n=spec.n,
        H=h,
        H_decimal=_decimal(h),
        au_hours=atomic_unit(spec),
        au_decimal=_decimal(atomic_unit(spec)),
    )
    return summary, matrix, spec


def cmd_plan(args: argparse.Namespace) -> int:
    summary, matrix, spec = _plan(args)
    if args.output_dir:
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_matrix(out / "matrix.csv", matrix)
        (out / "spec.json").write_text(dumps(spec_to_dict(spec)))
        (out / "summary.json").write_text(dumps(summary))
        if spec.m == 2:
            grid = type_matrix(spec, matrix).binary(args.zero_class)
            (out / "types.csv").write_text(type_matrix_csv(grid))
    if args.format == "csv":
        sys.stdout.write(matrix_to_csv(matrix))
    else:
        sys.stdout.write(dumps(summary))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    if spec.objects != spec.n:
        spec = ProblemSpec(spec.classes)
    k_uniform = None
    if args.matrix:
        matrix = load_matrix(args.matrix, default_au=atomic_unit(spec))
        scheme = matrix_to_scheme(matrix)
        if spec.m == 2:
            k_uniform = type_matrix(spec, matrix).k_uniform
    else:
        scheme = load_scheme(args.scheme)
    report = validate(spec, scheme)
    out = {
        "continuous_per_object": report.continuous_per_object,
        "agents_always_busy": report.agents_always_busy,
        "simultaneous_finish": report.simultaneous_finish,
        "objects_completed": report.objects_completed,
        "duration": report.duration,
        "optimum": report.optimum,
        "optimal": report.optimal,
        "uniform": report.uniform,
        "halt_count": report.halt_count,
        "work_records_au": [
            {str(c): v for c, v in rec.items()} for rec in report.work_records.totals
        ],
    }
    if k_uniform is not None:
        out["k_uniform"] = k_uniform
    sys.stdout.write(dumps(out))
    return 0 if report.optimal else 1


def cmd_partition(args: argparse.Namespace) -> int:
    try:
        values = [to_rational(x) for x in args.list.split(",") if x.strip()]
    except (TypeError, ValueError) as exc:
        raise UsageError(f"--list: {exc}") from exc
    splits = split_search(values, args.bound)
    irreducible = irreducible_representation(values, args.bound)
    out = {
        "mean": irreducible.mean,
        "mean_decimal": _decimal(irreducible.mean),
        "splits": [[list(p) for p in s.parts] for s in splits],
        "irreducible": [list(p) for p in irreducible.parts],
    }
    sys.stdout.write(dumps(out))
    return 0


def cmd_timing(args: argparse.Namespace) -> int:
    h = optimal_time_two_type(args.r1, args.r2, args.T)
    if args.strategy == "cyclic":
        halts = args.r1 + args.r2 - 1
    else:
        halts = halt_number(euclid_trace(args.r1, args.r2))
    rep = total_time(h, halts, args.epsilon)
    out = {
        "strategy": args.strategy,
        "H": rep.H,
        "H_decimal": _decimal(rep.H),
        "halt_count": rep.halt_count,
        "epsilon": rep.epsilon,
        "total": rep.total,
        "total_decimal": _decimal(rep.total),
        "excess_percent": rep.excess_percent,
        "excess_percent_decimal": percent(rep.excess_percent, 1),
    }
    sys.stdout.write(dumps(out))
    return 0


def cmd_fib(args: argparse.Namespace) -> int:
    rep = fibonacci_analysis(args.p)
    out = {
        "p": rep.p,
        "r1": rep.r1,
        "r2": rep.r2,
        "n": rep.n,
        "h": rep.h,
        "bound": f"{rep.log_phi_n:.6f}",
        "within_bound": rep.within_bound,
        "halts_at": list(rep.halts_at),
    }
    sys.stdout.write(dumps(out))
    return 0


def cmd_halt_stats(args: argparse.Namespace) -> int:
    stats = halt_statistics(args.n)
    out = {
        "n": stats.n,
        "mean": stats.mean,
        "mean_decimal": _decimal(stats.mean),
        "per_pair": [{"r1": r1, "r2": r2, "h": h} for (r1, r2), h in stats.per_pair],
    }
    sys.stdout.write(dumps(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-sched",
        description="Construct, verify and analyse minimum-time production schemes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="build a cyclic or Euclidean scheme")
    p.add_argument("--strategy", choices=("cyclic", "euclid"), required=True)
    p.add_argument("--spec", help="problem JSON (cyclic)")
    p.add_argument("--r1", type=int, help="type-1 agent count (euclid)")
    p.add_argument("--r2", type=int, help="type-2 agent count (euclid)")
    p.add_argument("--T", type=_rational, default=Fraction(2), help="type-2 completion time; type 1 takes 1")
    p.add_argument("--agent-order", choices=AGENT_ORDERS, default="type1-first")
    p.add_argument("--reduce-gcd", action="store_true", help="group agents by the gcd of class counts")
    p.add_argument("--zero-class", type=int, choices=(1, 2), default=1,
                   help="class written as 0 in types.csv")
    p.add_argument("--output-dir", help="write matrix.csv, its sidecar, spec.json, summary.json")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("verify", help="validate a scheme against a problem")
    p.add_argument("--spec", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--matrix", help="assignment matrix CSV")
    g.add_argument("--scheme", help="scheme JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("partition", help="harmonic-mean-preserving splits of a list")
    p.add_argument("--list", required=True, help="comma-separated rationals")
    p.add_argument("--bound", type=int, default=24)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("timing", help="production time with handover overhead")
    p.add_argument("--r1", type=int, required=True)
    p.add_argument("--r2", type=int, required=True)
    p.add_argument("--T", type=_rational, required=True)
    p.add_argument("--epsilon", type=_rational, required=True)
    p.add_argument("--strategy", choices=("cyclic", "euclid"), default="euclid")
    p.set_defaults(func=cmd_timing)

    p = sub.add_parser("fib", help="Fibonacci Euclidean scheme analysis")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_fib)

    p = sub.add_parser("halt-stats", help="mean Euclidean halt number for a given n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_halt_stats)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, SchemeError, CapacityError, ValueError, OSError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
