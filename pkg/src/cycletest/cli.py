"""Command-line interface.

Subcommands: test, simulate, calibrate-null, generate, diagnose.
Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 degenerate
statistic (no triangles, so the test is undefined).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import CycleTestError, InputError
from .experiment import (SimulationConfig, default_workers, diagnose,
                         generate, resolve_weights, run_dataset,
                         run_null_calibration, run_size_power)
from .models import ModelParams, SeedSpec

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_DEGENERATE = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; this tool reserves 2 for
    # input/parse problems, so remap.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE) from None


def _build_parser() -> _Parser:
    p = _Parser(prog="cycletest",
                description="Cycle-count test for a planted dense subgraph "
                            "in heterogeneous networks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("test", help="run the test on an edge-list file")
    t.add_argument("--input", required=True, help="edge list or MatrixMarket file")
    t.add_argument("--format", choices=("auto", "edgelist", "mtx"), default="auto")
    t.add_argument("--alpha", type=float, default=0.05)
    t.add_argument("--n", type=int, default=None,
                   help="explicit vertex count (preserves isolated vertices)")
    t.add_argument("--json", action="store_true", help="print a JSON report")

    s = sub.add_parser("simulate", help="size/power Monte Carlo over a grid")
    s.add_argument("--config", help="JSON file mirroring the config fields")
    s.add_argument("--n", type=int)
    s.add_argument("--weights", default="linear",
                   help="'linear', 'constant:<c>', or a file path")
    s.add_argument("--a-over-n", type=float, nargs="+",
                   help="per-n rates a/n (paired with --b-over-n)")
    s.add_argument("--b-over-n", type=float, nargs="+")
    s.add_argument("--r", type=float, nargs="+", help="membership probabilities")
    s.add_argument("--reps", type=int, default=200)
    s.add_argument("--alpha", type=float, default=0.05)
    s.add_argument("--seed", type=int, default=0, help="master seed")
    s.add_argument("--workers", type=int, default=None,
                   help="worker processes (default $CYCLETEST_WORKERS or 1)")
    s.add_argument("--json", action="store_true", help="print the JSON table")
    s.add_argument("--csv-out", help="also write the aggregate table as CSV")

    c = sub.add_parser("calibrate-null", help="compare the null statistic to N(0,1)")
    c.add_argument("--config", help="JSON config with a single a=b rate pair")
    c.add_argument("--n", type=int)
    c.add_argument("--weights", default="linear")
    c.add_argument("--p0", type=float, help="null rate p0 = a/n = b/n")
    c.add_argument("--reps", type=int, default=500)
    c.add_argument("--alpha", type=float, default=0.05)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--workers", type=int, default=None)
    c.add_argument("--json", action="store_true")

    g = sub.add_parser("generate", help="sample one planted graph to a file")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--weights", default="linear")
    g.add_argument("--a-over-n", type=float, required=True)
    g.add_argument("--b-over-n", type=float, required=True)
    g.add_argument("--r", type=float, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--rep-index", type=int, default=0)
    g.add_argument("--out", required=True)

    d = sub.add_parser("diagnose", help="regularity and power diagnostics")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--weights", default="linear")
    d.add_argument("--a-over-n", type=float, required=True)
    d.add_argument("--b-over-n", type=float, required=True)
    d.add_argument("--r", type=float, required=True)
    d.add_argument("--json", action="store_true")

    return p


def _report_text(report, parse_report) -> str:
    c = report.census
    lines = [
        f"graph: n={c.n} m={c.m} "
        f"(self-loops dropped {parse_report.self_loops_dropped}, "
        f"duplicates collapsed {parse_report.duplicates_collapsed})",
        f"counts: triangles={c.n3} six-cycles={c.n6}",
        f"densities: c3_hat={c.c3_hat:.6g} c6_hat={c.c6_hat:.6g}",
    ]
    if report.degenerate:
        lines.append("statistic: DEGENERATE (no triangles; test undefined)")
    else:
        decision = "reject H0" if report.reject else "fail to reject H0"
        lines.append(f"statistic: T = {report.t_n:.4f}  p = {report.p_value:.4g}  "
                     f"[{decision} at alpha={report.alpha}]")
    return "\n".join(lines) + "\n"


def _cmd_test(args) -> int:
    report, parse_report = run_dataset(args.input, alpha=args.alpha,
                                       fmt=args.format, n=args.n)
    if args.json:
        payload = report.to_dict()
        payload.update(parse_report.to_dict())
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        sys.stdout.write(_report_text(report, parse_report))
    return EXIT_DEGENERATE if report.degenerate else EXIT_OK


def _sim_config(args, *, need_pairs: bool) -> SimulationConfig:
    if args.config:
        cfg = SimulationConfig.from_json_file(args.config)
        if args.workers is not None:
            cfg = SimulationConfig.from_dict({**cfg.to_dict(), "workers": args.workers})
        return cfg
    if args.n is None:
        raise InputError("either --config or --n is required")
    workers = args.workers if args.workers is not None else default_workers()
    if need_pairs:
        if not args.a_over_n or not args.b_over_n or not args.r:
            raise InputError("--a-over-n, --b-over-n and --r are required "
                             "without --config")
        if len(args.a_over_n) != len(args.b_over_n):
            raise InputError("--a-over-n and --b-over-n must pair up")
        rate_grid = tuple(zip(args.a_over_n, args.b_over_n))
        r_grid = tuple(args.r)
    else:
        if args.p0 is None:
            raise InputError("--p0 is required without --config")
        rate_grid = ((args.p0, args.p0),)
        r_grid = (0.0,)
    return SimulationConfig(n=args.n, weights=args.weights, rate_grid=rate_grid,
                            r_grid=r_grid, reps=args.reps, alpha=args.alpha,
                            master_seed=args.seed, workers=workers)


def _cmd_simulate(args) -> int:
    cfg = _sim_config(args, need_pairs=True)
    table = run_size_power(cfg)
    if args.csv_out:
        Path(args.csv_out).write_text(table.to_csv())
    if args.json:
        sys.stdout.write(table.to_json())
    else:
        sys.stdout.write(table.to_text())
    return EXIT_OK


def _cmd_calibrate(args) -> int:
    cfg = _sim_config(args, need_pairs=False)
    report = run_null_calibration(cfg)
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return EXIT_OK


def _cmd_generate(args) -> int:
    params = ModelParams.from_rates(args.n, args.a_over_n, args.b_over_n, args.r)
    w = resolve_weights(args.weights, args.n)
    edge_path, sidecar = generate(params, w, SeedSpec(args.seed, args.rep_index),
                                  args.out)
    print(f"wrote {edge_path} and {sidecar}")
    return EXIT_OK


def _cmd_diagnose(args) -> int:
    params = ModelParams.from_rates(args.n, args.a_over_n, args.b_over_n, args.r)
    w = resolve_weights(args.weights, args.n)
    info = diagnose(params, w)
    if args.json:
        print(json.dumps(info, sort_keys=True, indent=2))
        return EXIT_OK
    reg = info["regularity"]
    th = info["theory"]
    com = info["community"]
    print(f"regularity: np0={reg['n_p0']:.4g} sqrt(n)={reg['sqrt_n']:.4g} "
          f"p0*||W||_2^2={reg['p0_norm2sq']:.4g} ||W||_2^2/n={reg['norm2sq_over_n']:.4g}")
    if reg["flags"]:
        for f in reg["flags"]:
            print(f"  flag: {f}")
    else:
        print("  all regularity conditions hold at the configured thresholds")
    print(f"theory: a_n={th['a_n']:.6g} b_n={th['b_n']:.6g} "
          f"c3={th['c3']:.6g} c6={th['c6']:.6g}")
    print(f"        lambda1_leading={th['lambda1_leading']:.6g} "
          f"lambda_sq={th['lambda_sq']:.6g} lambda_exact={info['lambda_exact']:.6g}")
    size = com["expected_size"]
    verdict = "large" if com["power_index_large"] else "small"
    print(f"community: expected size {size:.1f} of {args.n}; "
          f"power index {com['power_index']:.4g} ({verdict})")
    if info["homogeneous_weights"]:
        print("weights are constant: homogeneous special case")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    handlers = {
        "test": _cmd_test,
        "simulate": _cmd_simulate,
        "calibrate-null": _cmd_calibrate,
        "generate": _cmd_generate,
        "diagnose": _cmd_diagnose,
    }
    try:
        return handlers[args.command](args)
    except FileNotFoundError as e:
        print(f"error: file not found: {e.filename or e}", file=sys.stderr)
        return EXIT_INPUT
    except CycleTestError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
