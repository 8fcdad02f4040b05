"""Command-line front end: ``python -m dea_toolkit <subcommand> ...``.

Exit codes: 0 success/solved, 1 usage error, 2 unsolvable,
3 enumeration budget exceeded, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .analysis import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    bounds_report,
    crt_witness,
    exact_average,
    fundamental_period,
    verify_periodicity,
)
from .bench import (
    BenchConfig,
    emit_results,
    fixed6,
    run_comparison,
    run_gcd_sweep,
    write_manifest,
)
from .solver import Equation, dea_trace, general_solution, normalize, remainder_sequence, solve

EXIT_OK, EXIT_USAGE, EXIT_UNSOLVABLE, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4

OUT_DIR_ENV = "DEA_TOOLKIT_OUT"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_int(text: str) -> int:
    """Decimal or ``0x``-prefixed hex integer of any size, optionally signed."""
    s = text.strip().replace("_", "")
    sign = 1
    if s and s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    try:
        if s.lower().startswith("0x"):
            return sign * int(s[2:], 16)
        if not s.isdigit():
            raise ValueError
        return sign * int(s, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed integer: {text!r}") from None


def _s(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    return str(v)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(lines))


def _canonical_pair(a: int, b: int) -> tuple[int, int]:
    eq, rec = normalize(a, b, 1)
    if rec.degenerate:
        raise UsageError(f"need |a| != |b| and both nonzero, got ({a}, {b})")
    return eq.a, eq.b


def cmd_solve(args) -> int:
    report, eq, rec = solve(args.a, args.b, args.c, solver=args.solver)
    m = report.metrics
    payload = {
        "a": _s(args.a), "b": _s(args.b), "c": _s(args.c),
        "solver": m.solver_id.value,
        "loop_iterations": _s(m.loop_iterations),
        "equivalent_recursions": _s(m.equivalent_recursions),
        "gcd": _s(math.gcd(args.a, args.b)),
    }
    if not report.solved:
        payload["solvable"] = False
        _emit(args, payload, [f"unsolvable: gcd={report.outcome.gcd}",
                              f"solver={m.solver_id.value} iterations={m.loop_iterations}"])
        return EXIT_UNSOLVABLE
    sol = report.solution
    payload.update(solvable=True, x=_s(sol.x), y=_s(sol.y))
    lines = [
        f"x={sol.x} y={sol.y}",
        f"gcd={payload['gcd']}",
        f"solver={m.solver_id.value} iterations={m.loop_iterations} "
        f"recursions={m.equivalent_recursions}",
    ]
    if args.general:
        gs = general_solution(report, Equation(args.a, args.b, args.c))
        payload["general"] = {"x0": _s(gs.x0), "y0": _s(gs.y0),
                              "step_x": _s(gs.step_x), "step_y": _s(gs.step_y)}
        lines.append(f"general: x = {gs.x0} + m*({gs.step_x}), y = {gs.y0} - m*({gs.step_y})")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_trace(args) -> int:
    eq, rec = normalize(args.a, args.b, args.c)
    if rec.degenerate or rec.trivial_c_zero:
        print("no trace for degenerate input; solving directly")
        return cmd_solve(argparse.Namespace(**vars(args), solver="dea", general=False))
    steps, ys, report = dea_trace(eq.a, eq.b, eq.c)
    seq = remainder_sequence(eq.a, eq.b)
    lines = [f"equation: {eq.a}x + {eq.b}y = {eq.c}", "chain: " + " ".join(map(str, seq.terms))]
    for st in steps:
        if st.remainder is None:
            lines.append(f"call {st.index}: f({st.a}, 0): {st.a} is the gcd of original inputs. "
                         f"{eq.c} is not a multiple of {st.a}")
        elif st.remainder == 0:
            lines.append(f"call {st.index}: ({eq.c} - {st.a}) mod {st.b} = 0 -> fired at index {st.index}")
        else:
            lines.append(f"call {st.index}: ({eq.c} - {st.a}) mod {st.b} = {st.remainder}")
    payload = {
        "equation": [_s(eq.a), _s(eq.b), _s(eq.c)],
        "chain": [_s(t) for t in seq.terms],
        "steps": [{"index": st.index, "a": _s(st.a), "b": _s(st.b),
                   "remainder": None if st.remainder is None else _s(st.remainder)} for st in steps],
        "back_substitution": [_s(y) for y in ys],
        "solvable": report.solved,
    }
    if report.solved:
        sol = report.solution
        lines.append("back-substitution y: " + ", ".join(map(str, ys)))
        lines.append(f"x={sol.x} y={sol.y}")
        payload.update(x=_s(sol.x), y=_s(sol.y))
    _emit(args, payload, lines)
    return EXIT_OK if report.solved else EXIT_UNSOLVABLE


def cmd_period(args) -> int:
    a, b = _canonical_pair(args.a, args.b)
    rep = fundamental_period(remainder_sequence(a, b))
    payload = {"L": _s(rep.L), "factors": [_s(f) for f in rep.factors]}
    lines = [f"L={rep.L}", "factors: " + " ".join(map(str, rep.factors))]
    if args.verify is not None:
        v = verify_periodicity(a, b, span=args.verify, budget=args.budget)
        payload.update(periodic=v.periodic, mismatches=_s(v.mismatches), checked=_s(v.checked),
                       premature_periods=[_s(d) for d in v.premature_periods],
                       empirically_minimal=v.empirically_minimal)
        lines.append(f"periodic={v.periodic} (checked {v.checked} solvable c, span={v.span})")
        lines.append("minimality scan: " + ("no premature period" if v.empirically_minimal
                                            else "premature periods " + " ".join(map(str, v.premature_periods))))
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_bounds(args) -> int:
    a, b = _canonical_pair(args.a, args.b)
    r = bounds_report(a, b)
    fields = ["bound_solvable_counts", "bound_with_unsolvable", "bound_limit", "bound_fib", "bound_gcd"]
    payload = {"k": _s(r.k), "gcd": _s(r.gcd), "bound_expected": repr(r.bound_expected)}
    lines = [f"k={r.k} g={r.gcd}"]
    for f in fields:
        v = getattr(r, f)
        payload[f] = _s(v)
        lines.append(f"{f} = {fixed6(v)}")
    lines.append(f"bound_expected = {r.bound_expected:.6f}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_avg(args) -> int:
    a, b = _canonical_pair(args.a, args.b)
    r = exact_average(a, b, budget=args.budget)
    payload = {"L": _s(r.L), "k": _s(r.k), "n_counts": [_s(n) for n in r.n_counts],
               "n_prime": _s(r.n_prime), "exact_average": _s(r.exact_average)}
    lines = [
        f"L={r.L} k={r.k}",
        "n_i: " + " ".join(f"n_{i}={n}" for i, n in enumerate(r.n_counts, 1)),
        f"n'={r.n_prime}",
        f"exact average = {_s(r.exact_average)} = {fixed6(r.exact_average)}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_crt(args) -> int:
    a, b = _canonical_pair(args.a, args.b)
    r = crt_witness(remainder_sequence(a, b))
    payload = {"condition_holds": r.condition_holds,
               "witness": None if r.witness is None else _s(r.witness),
               "cardinality_per_period": None if r.cardinality_per_period is None else _s(r.cardinality_per_period),
               "blocking_pairs": [[_s(j), _s(l)] for j, l in r.blocking_pairs]}
    lines = [f"pairwise-gcd condition holds: {r.condition_holds}"]
    if r.witness is None:
        pairs = ", ".join(f"(c_{j}, c_{l})" for j, l in r.blocking_pairs)
        lines.append(f"no common c: congruence pair incompatible {pairs}")
    else:
        lines.append(f"witness c={r.witness} (one per {r.merged_modulus}; "
                     f"{r.cardinality_per_period} per period)")
    _emit(args, payload, lines)
    return EXIT_OK


def _out_path(args, default_name: str) -> Path:
    if args.out:
        return Path(args.out)
    return Path(os.environ.get(OUT_DIR_ENV, ".")) / default_name


def cmd_bench_compare(args) -> int:
    out = _out_path(args, "compare.csv")
    cfg = BenchConfig(bits=args.bits, trials=args.trials, seed=args.seed, mode="compare",
                      output_path=out.name, workers=args.workers)
    summary = run_comparison(cfg)
    emit_results(summary.records, out, kind="compare")
    write_manifest(cfg, out)
    avg_i = {k.value: _s(v) for k, v in summary.avg_loop_iterations.items()}
    avg_r = {k.value: _s(v) for k, v in summary.avg_equivalent_recursions.items()}
    payload = {"trials": _s(summary.trials), "avg_loop_iterations": avg_i,
               "avg_equivalent_recursions": avg_r,
               "delta_distribution": {str(k): _s(v) for k, v in summary.delta_distribution.items()},
               "output": str(out)}
    lines = [f"trials={summary.trials} bits={cfg.bits} seed={cfg.seed}"]
    for sid, v in summary.avg_loop_iterations.items():
        lines.append(f"{sid.value}: avg iterations {fixed6(v)}, "
                     f"avg recursions {fixed6(summary.avg_equivalent_recursions[sid])}")
    lines.append(f"wrote {out}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_bench_sweep(args) -> int:
    out = _out_path(args, "gcd_sweep.csv")
    cfg = BenchConfig(bits=args.bits, trials=args.trials, seed=args.seed, mode="gcd_sweep",
                      gcd_min=args.gcd_min, gcd_max=args.gcd_max, output_path=out.name,
                      workers=args.workers)
    records = run_gcd_sweep(cfg)
    emit_results(records, out, kind="sweep")
    write_manifest(cfg, out)
    payload = {"groups": _s(len(records)), "output": str(out)}
    lines = [f"groups={len(records)} bits={cfg.bits} samples/g={cfg.trials} seed={cfg.seed}",
             f"wrote {out}"]
    _emit(args, payload, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dea-toolkit", description="Linear Diophantine solver and analysis toolkit")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def triple(sp):
        for name in ("a", "b", "c"):
            sp.add_argument(name, type=parse_int)

    def pair(sp):
        for name in ("a", "b"):
            sp.add_argument(name, type=parse_int)

    sp = sub.add_parser("solve", parents=[common], help="solve ax + by = c")
    triple(sp)
    sp.add_argument("--solver", choices=["dea", "eea", "eea2"], default="dea")
    sp.add_argument("--general", action="store_true", help="print the parameterised family")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("trace", parents=[common], help="step through DEA")
    triple(sp)
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("period", parents=[common], help="fundamental period of the call count")
    pair(sp)
    sp.add_argument("--verify", nargs="?", type=int, const=1, default=None, metavar="SPAN")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_period)

    sp = sub.add_parser("bounds", parents=[common], help="evaluate the average-case bounds")
    pair(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("avg", parents=[common], help="exact average call count by enumeration")
    pair(sp)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_avg)

    sp = sub.add_parser("crt", parents=[common], help="common member of all residue sets")
    pair(sp)
    sp.set_defaults(func=cmd_crt)

    def bench_flags(sp, bits, trials):
        sp.add_argument("--bits", type=int, default=bits)
        sp.add_argument("--trials", type=int, default=trials)
        sp.add_argument("--seed", type=parse_int, default=0)
        sp.add_argument("--out", default=None, help=f"CSV path (default: ${OUT_DIR_ENV} or cwd)")
        sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("bench-compare", parents=[common], help="three-solver comparison")
    bench_flags(sp, 128, 10_000)
    sp.set_defaults(func=cmd_bench_compare)

    sp = sub.add_parser("bench-gcd-sweep", parents=[common], help="averages conditioned on gcd")
    bench_flags(sp, 64, 200)
    sp.add_argument("--gcd-min", type=parse_int, default=2)
    sp.add_argument("--gcd-max", type=parse_int, default=100)
    sp.set_defaults(func=cmd_bench_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
