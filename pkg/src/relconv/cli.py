"""Command-line front-end: every operation as a subcommand.

Exit codes: 0 on success with all checked inequalities holding, 1 when any
checked inequality is violated (the violations land in the report), 2 on
usage or configuration errors.

Reports are JSON with a schema_version header and the run configuration
embedded for reproducibility.  Everything except the wall_ms timing fields
is deterministic for a fixed configuration; the thread count never changes
result bytes and is therefore not part of the serialized configuration.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog as cat
from .cayley import AbelianGroup, ConnectionSet
from .convexity import (
    check_almost_convex,
    check_almost_convex_anchored,
    check_mean_inequality,
    check_sharpened,
    make_tent,
)
from .extremal import (
    ConvergenceError,
    branch_point,
    estimate_sup,
    majorant,
    majorant_grid,
    parabola_grid,
)
from .grid import GridFunction, read_csv, write_csv
from .isoperimetry import profile, six_cycle_counterexample

SCHEMA_VERSION = 1


def _write_json(path: str, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def _report(config: dict, body: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "config": config, **body}


def _cmd_eval_f(args) -> int:
    try:
        x = Fraction(args.x)
        mv = majorant(x)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"F({args.x}) = {mv.value!r}  (k = {mv.branch})")
    if args.out:
        _write_json(args.out, _report(
            {"subcommand": "eval-f", "x": args.x, "seed": args.seed},
            {"value": mv.value, "k": mv.branch},
        ))
    return 0


def _cmd_beta(args) -> int:
    try:
        b = branch_point(args.k)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"beta({args.k}) = {b} (~= {float(b)!r})")
    if args.out:
        _write_json(args.out, _report(
            {"subcommand": "beta", "k": args.k, "seed": args.seed},
            {"numerator": str(b.numerator), "denominator": str(b.denominator), "float": float(b)},
        ))
    return 0


def _cmd_estimate_sup(args) -> int:
    stats: dict = {}
    code = 0
    try:
        g = estimate_sup(args.p, args.n, tol=args.tol, max_iters=args.max_iters, stats=stats)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        g = exc.last
        code = 1
    print(
        f"p={args.p} N={args.n}: {stats['iterations']} sweeps, "
        f"last decrease {stats['last_decrease']:.3e}, peak {max(g.floats()):.9f}"
    )
    if args.csv:
        write_csv(g, args.csv)
    if args.out:
        _write_json(args.out, _report(
            {"subcommand": "estimate-sup", "p": args.p, "n": args.n,
             "tol": args.tol, "max_iters": args.max_iters, "seed": args.seed},
            {"iterations": stats["iterations"], "converged": stats["converged"],
             "values": [float(v) for v in g.floats()]},
        ))
    return code


def _load_fn(source: str, n: int | None) -> GridFunction:
    if source.startswith("builtin:"):
        if n is None:
            raise ValueError("builtin functions need --n")
        rest = source[len("builtin:"):]
        if rest == "F":
            return majorant_grid(n)
        if rest == "parabola":
            return parabola_grid(n)
        if rest.startswith("tent:"):
            x0_s, h0_s = rest[len("tent:"):].split(",")
            return make_tent(Fraction(x0_s), Fraction(h0_s), n)
        raise ValueError(f"unknown builtin {rest!r} (want F, parabola, or tent:x0,h0)")
    return read_csv(source)


def _cmd_check_class(args) -> int:
    try:
        f = _load_fn(args.fn, args.n)
        klass = args.klass
        if klass == "F":
            violations = check_almost_convex(f)
        elif klass == "F0":
            violations = check_almost_convex_anchored(f)
        elif klass.startswith("Fm:"):
            violations = check_mean_inequality(f, int(klass[3:]), samples=args.samples, seed=args.seed)
        elif klass == "strong":
            violations = check_sharpened(f)
        else:
            raise ValueError(f"unknown class {klass!r} (want F, F0, Fm:m, or strong)")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    arithmetic = "rational" if f.is_exact and klass in ("F", "F0") else "float"
    report = _report(
        {"subcommand": "check-class", "fn": args.fn, "class": klass, "n": f.N,
         "samples": args.samples, "seed": args.seed},
        {
            "input": args.fn,
            "class": klass,
            "N": f.N,
            "arithmetic": arithmetic,
            "violations": [v.to_dict() for v in violations],
            "max_slack": violations.max_slack if violations.max_slack != -float("inf") else None,
        },
    )
    out = args.report or args.out
    if out:
        _write_json(out, report)
    print(f"{args.fn} vs class {klass} at N={f.N} [{arithmetic}]: {len(violations)} violation(s)")
    return 1 if violations else 0


def _cmd_profile(args) -> int:
    try:
        group = AbelianGroup.parse(args.group)
        s = ConnectionSet.from_text(group, args.s)
        report = profile(group, s, m_override=args.m, order_cap=args.order_cap, threads=args.threads)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    body = report.to_dict()
    payload = _report(
        {"subcommand": "profile", "group": args.group, "s": args.s,
         "m": args.m, "seed": args.seed},
        body,
    )
    if args.out:
        if args.format == "csv":
            _write_rows_csv(args.out, [
                {"group": report.group, "S": report.connection_set, **e.to_dict()}
                for e in report.entries
            ])
        else:
            _write_json(args.out, payload)
    interior = [e.ratio for e in report.entries if 0 < e.n < report.order]
    print(
        f"{report.group} S={report.connection_set} m={report.m}: "
        f"min ratio {min(interior):.6f}" + ("" if report.hypothesis_met else " [hypothesis unmet]")
    )
    return 1 if report.bound_violations() else 0


def _write_rows_csv(path: str, rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        w.writeheader()
        for row in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})


def _cmd_verify_catalog(args) -> int:
    try:
        entries = cat.load_catalog(args.catalog)
        results = cat.verify_catalog(entries, order_cap=args.order_cap, threads=args.threads)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        _write_rows_csv(args.out, results.rows)
    print(f"{len(entries)} catalog entries, {len(results.rows)} profile rows, "
          f"{len(results.violations)} bound violation(s)")
    for name, n in results.violations:
        print(f"  VIOLATION {name} at n={n}")
    return 0 if results.ok else 1


def _cmd_counterexample(args) -> int:
    boundary, bound = six_cycle_counterexample()
    print(f"{boundary} < {bound!r}")
    if args.out:
        _write_json(args.out, _report(
            {"subcommand": "counterexample-s3", "seed": args.seed},
            {"boundary": boundary, "bound": bound},
        ))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--threads", type=int, default=1, help="worker threads for exhaustive search")
    common.add_argument("--out", type=str, default=None, help="write a report to this path")
    common.add_argument("--format", choices=("json", "csv"), default="json", help="report format for --out")

    ap = argparse.ArgumentParser(
        prog="relconv",
        description="Relaxed-convexity extremal functions and Cayley-digraph edge isoperimetry.",
        epilog="example: relconv eval-f --x 1/6",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-f", parents=[common], help="evaluate the extremal majorant")
    p.add_argument("--x", required=True, help="abscissa in [0,1], as p/q or a decimal")
    p.set_defaults(handler=_cmd_eval_f)

    p = sub.add_parser("beta", parents=[common], help="exact branch point")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=_cmd_beta)

    p = sub.add_parser("estimate-sup", parents=[common], help="discrete supremum of the defect-|dx|^p class")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--csv", type=str, default=None, help="write grid values as i,x,value rows")
    p.set_defaults(handler=_cmd_estimate_sup)

    p = sub.add_parser("check-class", parents=[common], help="scan a grid function against a class")
    p.add_argument("--fn", required=True,
                   help="csv path, builtin:F, builtin:parabola, or builtin:tent:x0,h0")
    p.add_argument("--class", dest="klass", required=True, help="F, F0, Fm:m, or strong")
    p.add_argument("--n", type=int, default=None, help="grid resolution for builtins")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--report", type=str, default=None, help="JSON report path")
    p.set_defaults(handler=_cmd_check_class)

    p = sub.add_parser("profile", parents=[common], help="exhaustive isoperimetric profile")
    p.add_argument("--group", required=True, help="e.g. Z3xZ3")
    p.add_argument("--s", required=True, help='e.g. "(1,0),(0,1)" or basis')
    p.add_argument("--m", type=int, default=None, help="exponent bound override (>= max element order)")
    p.add_argument("--order-cap", type=int, default=32)
    p.set_defaults(handler=_cmd_profile)

    p = sub.add_parser("verify-catalog", parents=[common], help="profile every catalog fixture")
    p.add_argument("--catalog", type=str, default=None, help="catalog JSON (default: built-in)")
    p.add_argument("--order-cap", type=int, default=32)
    p.set_defaults(handler=_cmd_verify_catalog)

    p = sub.add_parser("counterexample-s3", parents=[common],
                       help="boundary 2 vs bound 3*sqrt(2/3) on the bidirectional 6-cycle")
    p.set_defaults(handler=_cmd_counterexample)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
