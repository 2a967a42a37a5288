"""Command line interface.

Three subcommands: `test` runs the stationarity test on a series file
and writes a JSON report, `simulate` draws one series from a benchmark
model, `experiment` runs a size or power grid and writes delimited
tables, profile CSVs, a JSON summary, and figures.

Exit codes for `test`: 0 the null stands, 1 reject, 2 error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from .engine import TestConfig, run_test
from .errors import WaveContrastError
from .experiment import ExperimentPlan, run_experiment
from .io import read_series, write_json_report, write_series
from .rng import substream
from .simulate import INNOVATIONS, MODEL_TAGS, ModelSpec, gen_model

WORKERS_ENV = "WAVECONTRAST_WORKERS"


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_report(result, runtime_ms: float) -> dict:
    """Assemble the JSON report for one test run, in a fixed key order."""
    cfg = result.config
    return {
        "reject": result.reject,
        "statistic": result.statistic,
        "critical_value": result.critical_value,
        "alpha": result.alpha,
        "D": result.D,
        "J_star": result.J_star,
        "M": cfg.M,
        "m_T": cfg.m_T,
        "B": cfg.B,
        "seed": cfg.master_seed,
        "argmax": {
            "s_p": result.argmax.s_p,
            "e_p": result.argmax.e_p,
            "s_q": result.argmax.s_q,
            "e_q": result.argmax.e_q,
            "scale": result.argmax.scale,
        },
        "per_scale_max": [None if not v == v else float(v) for v in result.per_scale_max],
        "degenerate_cells": result.degenerate_cells,
        "runtime_ms": runtime_ms,
    }


def cmd_test(args) -> int:
    try:
        x = read_series(args.input)
        cfg = TestConfig(alpha=args.alpha, M=args.M, m_T=args.m_T,
                         J_star=args.J_star, B=args.B, master_seed=args.seed)
        t0 = time.perf_counter()
        result = run_test(x, cfg)
        runtime_ms = (time.perf_counter() - t0) * 1e3
    except (WaveContrastError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report_path = Path(args.report) if args.report else Path(str(args.input) + ".report.json")
    write_json_report(report_path, build_report(result, runtime_ms))
    if args.figures:
        from . import figures
        figures.save_test_figure(x, result, report_path.with_suffix(".png"))
    verdict = "reject" if result.reject else "accept"
    print(f"{verdict}: statistic {result.statistic:.4f} vs critical value "
          f"{result.critical_value:.4f} (alpha {result.alpha:g}, D {result.D}, "
          f"J_star {result.J_star})")
    print(f"report written to {report_path}")
    return 1 if result.reject else 0


def cmd_simulate(args) -> int:
    try:
        spec = ModelSpec(tag=args.model.upper(), T=args.T, innovations=args.innovations)
        rng = substream(args.seed, "simulate", spec.tag, spec.T, spec.innovations)
        x = gen_model(spec, rng)
        write_series(args.out, x)
    except (WaveContrastError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(x)} observations from {spec.tag} to {args.out}")
    return 0


def cmd_experiment(args) -> int:
    try:
        plan = ExperimentPlan(
            suite=args.suite,
            models=tuple(tag.strip().upper() for tag in args.models.split(",") if tag.strip()),
            T_values=tuple(args.T),
            alphas=tuple(args.alphas),
            innovations=tuple(args.innovations),
            R=args.R,
            B=args.B,
            master_seed=args.seed,
            M=args.M,
            m_T=args.m_T,
            J_star=args.J_star,
            workers=args.workers,
            out_dir=Path(args.out_dir),
            figures=args.figures,
        )
        report = run_experiment(plan)
    except WaveContrastError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ok = 0
    for cell in report.cells:
        if cell.error is None:
            ok += 1
            print(f"{cell.model} T={cell.T} alpha={cell.alpha:g} [{cell.innovation}]: "
                  f"{cell.rejections}/{cell.R} rejections "
                  f"(fraction {cell.fraction:.3f}, mean {cell.mean_runtime_ms:.0f} ms)")
        else:
            print(f"{cell.model} T={cell.T} alpha={cell.alpha:g} [{cell.innovation}]: "
                  f"infeasible ({cell.error})")
    for path in report.written:
        print(f"wrote {path}")
    return 0 if ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavecontrast",
        description="Second-order stationarity test based on wavelet periodogram "
                    "contrasts over random interval pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="test a series file for second-order stationarity")
    p_test.add_argument("input", help="CSV file with one numeric column")
    p_test.add_argument("--alpha", type=float, default=0.05, help="significance level")
    p_test.add_argument("--M", type=int, default=40, help="number of random intervals")
    p_test.add_argument("--m-T", dest="m_T", type=int, default=None,
                        help="minimum interval length (default: ceil(T^(2/3)))")
    p_test.add_argument("--J-star", dest="J_star", type=int, default=None,
                        help="number of scales (default: min(4, floor(log2 T) - 3))")
    p_test.add_argument("--B", type=int, default=200, help="bootstrap iterations")
    p_test.add_argument("--seed", type=int, default=0, help="master seed")
    p_test.add_argument("--report", default=None, help="report path (default: INPUT.report.json)")
    p_test.add_argument("--no-figures", dest="figures", action="store_false",
                        help="skip the PNG next to the report")
    p_test.set_defaults(func=cmd_test)

    p_sim = sub.add_parser("simulate", help="draw one series from a benchmark model")
    p_sim.add_argument("model", help=f"model tag, one of {', '.join(MODEL_TAGS)}")
    p_sim.add_argument("--T", type=int, required=True, help="series length")
    p_sim.add_argument("--seed", type=int, default=0, help="master seed")
    p_sim.add_argument("--innovations", default="normal",
                       help=f"innovation distribution for S-models, one of {', '.join(INNOVATIONS)}")
    p_sim.add_argument("--out", required=True, help="output CSV path")
    p_sim.set_defaults(func=cmd_simulate)

    p_exp = sub.add_parser("experiment", help="run a size or power grid")
    p_exp.add_argument("--suite", choices=["size", "power"], required=True)
    p_exp.add_argument("--models", required=True, help="comma-separated model tags")
    p_exp.add_argument("--T", type=int, nargs="+", required=True, help="series lengths")
    p_exp.add_argument("--alphas", type=float, nargs="+", default=[0.1, 0.05])
    p_exp.add_argument("--innovations", nargs="+", default=["normal"])
    p_exp.add_argument("--R", type=int, default=100, help="replications per cell")
    p_exp.add_argument("--B", type=int, default=200, help="bootstrap iterations")
    p_exp.add_argument("--M", type=int, default=40, help="number of random intervals")
    p_exp.add_argument("--m-T", dest="m_T", type=int, default=None)
    p_exp.add_argument("--J-star", dest="J_star", type=int, default=None)
    p_exp.add_argument("--seed", type=int, default=0, help="master seed")
    p_exp.add_argument("--workers", type=int, default=None,
                       help=f"worker processes (default: ${WORKERS_ENV} or 1)")
    p_exp.add_argument("--out-dir", required=True, help="directory for report files")
    p_exp.add_argument("--no-figures", dest="figures", action="store_false")
    p_exp.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", None) is None and args.command == "experiment":
        args.workers = _default_workers()
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
