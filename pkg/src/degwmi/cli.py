"""Command line front end: solve, gen, compare, bench.

Exit codes: 0 success, 1 I/O or parse failure, 2 validation failure,
3 certification or comparison mismatch.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from .compare import compare_traces, make_view_hook
from .degdet import MINUS_INF, SolveResult, WmiInstance, solve_heap, solve_naive
from .degdet import verify_splitting_certificate
from .frank import frank_solve
from .instance_io import (
    ParseError,
    ValidationError,
    generate_instance,
    load_instance,
    render_instance,
)
from .intersect import max_common_independent
from .oracle import brute_force
from .trace import dump_trace

ALGOS = ("degdet-naive", "degdet-heap", "frank", "frank-modified", "oracle")


def _fmt_cols(cols) -> str:
    return "{" + ",".join(str(c + 1) for c in sorted(cols)) + "}"


def _run_algo(inst: WmiInstance, algo: str, validate: bool, trace: bool) -> SolveResult:
    if algo == "degdet-naive":
        return solve_naive(inst, validate=validate, trace=trace)
    if algo == "degdet-heap":
        return solve_heap(inst, validate=validate, trace=trace)
    if algo == "frank":
        return frank_solve(inst, "classic", validate=validate, trace=trace)
    if algo == "frank-modified":
        return frank_solve(inst, "modified", validate=validate, trace=trace)
    raise ValueError(algo)


def cmd_solve(args) -> int:
    inst = load_instance(args.path)
    if args.algo == "oracle":
        res = brute_force(inst)
        deg = "-inf" if res.degdet_perfect == MINUS_INF else res.degdet_perfect
        print(f"degdet: {deg}")
        print("k  best-weight")
        for k in sorted(res.best_by_card):
            print(f"{k:<2} {res.best_by_card[k]}")
        return 0
    result = _run_algo(inst, args.algo, validate=not args.no_validate, trace=True)
    deg = "-inf" if result.degdet == MINUS_INF else result.degdet
    print(f"degdet: {deg}")
    print(f"X*: {_fmt_cols(result.best.columns)}  weight {result.best.weight}")
    print("k  weight  columns")
    for k in sorted(result.by_cardinality):
        rec = result.by_cardinality[k]
        print(f"{k:<2} {rec.weight:<7} {_fmt_cols(rec.columns)}")
    if args.trace:
        dump_trace(result.tracer.records, args.trace)
        print(f"trace written to {args.trace}")
    if args.certify:
        failures = []
        for k, rec in sorted(result.by_cardinality.items()):
            if not verify_splitting_certificate(inst, rec.columns, rec.splitting):
                failures.append(f"splitting certificate failed for k={k}")
        x_max, cert = max_common_independent(inst.A, inst.B)
        if cert.value != len(x_max):
            failures.append("dual certificate does not match the maximum cardinality")
        if max(result.by_cardinality) != len(x_max):
            failures.append("per-cardinality records stop short of the maximum")
        if failures:
            for f in failures:
                print(f"CERTIFY FAIL: {f}")
            return 3
        print(f"certified: {len(result.by_cardinality)} cardinality records, "
              f"dual value {cert.value} = |X|")
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def cmd_gen(args) -> int:
    inst = generate_instance(
        seed=args.seed,
        n=args.n,
        m=args.m,
        entry_range=_parse_range(args.entries),
        weight_range=_parse_range(args.weights),
        density=args.density,
    )
    sys.stdout.write(render_instance(inst))
    return 0


def cmd_compare(args) -> int:
    inst = load_instance(args.path)
    wmi = solve_heap(inst, validate=True, trace=True, snapshot_hook=make_view_hook(inst))
    frank = frank_solve(inst, "modified", validate=True, trace=True)
    report = compare_traces(wmi.tracer.records, frank.tracer.records)
    for line in report.lines():
        print(line)
    if wmi.degdet != frank.degdet:
        print(f"MISMATCH: degdet {wmi.degdet} vs {frank.degdet}")
        return 3
    return 0 if report.ok else 3


def cmd_bench(args) -> int:
    sizes = [tuple(int(x) for x in s.split(":")) for s in args.sizes.split(",")]
    algos = ["degdet-heap", "frank", "frank-modified"]
    print(f"{'size':<10}{'algo':<16}{'median_s':<12}{'row_ops':<9}"
          f"{'A1':<4}{'B1':<4}{'A2':<4}{'B2':<4}{'steps':<6}")
    for n, m in sizes:
        inst = generate_instance(seed=args.seed, n=n, m=m)
        for algo in algos:
            times = []
            result = None
            for _ in range(args.repeats):
                t0 = time.perf_counter()
                result = _run_algo(inst, algo, validate=False, trace=False)
                times.append(time.perf_counter() - t0)
            tr = result.tracer
            cc = tr.case_counts
            steps = tr.kappa_steps + tr.epsilon_steps
            print(
                f"{f'{n}x{m}':<10}{algo:<16}{statistics.median(times):<12.4f}"
                f"{tr.row_ops:<9}{cc['A1']:<4}{cc['B1']:<4}{cc['A2']:<4}{cc['B2']:<4}"
                f"{steps:<6}"
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="degwmi", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="solve an instance file")
    ps.add_argument("path")
    ps.add_argument("--algo", choices=ALGOS, default="degdet-heap")
    ps.add_argument("--trace", metavar="FILE", help="write the event stream")
    ps.add_argument("--certify", action="store_true", help="verify all certificates")
    ps.add_argument("--no-validate", action="store_true", help="skip runtime invariants")
    ps.set_defaults(func=cmd_solve)

    pg = sub.add_parser("gen", help="generate a random instance on stdout")
    pg.add_argument("--seed", type=int, required=True)
    pg.add_argument("--n", type=int, required=True)
    pg.add_argument("--m", type=int, required=True)
    pg.add_argument("--entries", default="-2:2", help="entry range LO:HI")
    pg.add_argument("--weights", default="-5:5", help="weight range LO:HI")
    pg.add_argument("--density", type=float, default=1.0)
    pg.set_defaults(func=cmd_gen)

    pc = sub.add_parser("compare", help="check solver equivalence on an instance")
    pc.add_argument("path")
    pc.set_defaults(func=cmd_compare)

    pb = sub.add_parser("bench", help="time solvers on generated instances")
    pb.add_argument("--sizes", default="8:16,16:32", help="comma list of n:m")
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--repeats", type=int, default=3)
    pb.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValidationError, ValueError) as exc:
        print(f"invalid instance: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
