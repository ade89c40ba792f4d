"""Command-line runner.

    mmwave-discovery run CONFIG [--seed N] [--out DIR] [--parallelism K]
    mmwave-discovery reproduce FIGURE [--seed N] [--users N] [--out DIR] [--parallelism K]

Exit codes: 0 success, 1 config error, 2 runtime error. Results are CSV
plus JSON, never binary; every run echoes the resolved config (including
the calibrated transmit power) in the summary and on stdout.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .engine import run_experiment, sweep
from .figures import FIGURE_IDS, reproduce
from .report import emit, header_lines, write_curve_csv

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmwave-discovery",
        description="Monte-Carlo simulator for context-aided directional cell discovery",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the experiment described by a YAML config")
    run.add_argument("config", help="path to the experiment config file")
    run.add_argument("--seed", type=int, default=None, help="override the config seed")
    run.add_argument("--out", default="results", help="output directory (default: results)")
    run.add_argument("--parallelism", type=int, default=1, help="worker processes (default: 1)")

    rep = sub.add_parser("reproduce", help="run a preconfigured figure family")
    rep.add_argument("figure", help=f"figure id, one of: {', '.join(FIGURE_IDS)}")
    rep.add_argument("--seed", type=int, default=None, help="override the default seed")
    rep.add_argument("--users", type=int, default=None, help="override the population size")
    rep.add_argument("--out", default="results", help="output directory (default: results)")
    rep.add_argument("--parallelism", type=int, default=1, help="worker processes (default: 1)")
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error in {args.config}:", file=sys.stderr)
        for problem in exc.problems:
            print(f"  - {problem}", file=sys.stderr)
        return EXIT_CONFIG
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    out = Path(args.out)
    base = Path(args.config).stem
    try:
        written = []
        if cfg.sweep_axis is not None:
            results = sweep(cfg, cfg.sweep_axis, cfg.sweep_values, args.parallelism)
            points = list(zip(cfg.sweep_values, results))
            written.append(write_curve_csv(out / f"{base}.curve.csv", cfg.sweep_axis, points))
            for value, result in points:
                tag = f"{base}__{cfg.sweep_axis}_{value:g}"
                written += emit(result, out / f"{tag}.csv", out / f"{tag}.summary.json")
            header = header_lines(results[0])
        else:
            result = run_experiment(cfg, args.parallelism)
            written += emit(result, out / f"{base}.csv", out / f"{base}.summary.json")
            header = header_lines(result)
    except (OSError, RuntimeError, ValueError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    for line in header:
        print(line)
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_reproduce(args: argparse.Namespace) -> int:
    if args.figure not in FIGURE_IDS:
        print(
            f"unknown figure id {args.figure!r}; valid ids: {', '.join(FIGURE_IDS)}",
            file=sys.stderr,
        )
        return EXIT_CONFIG
    kwargs = {"users": args.users, "parallelism": args.parallelism}
    if args.seed is not None:
        kwargs["seed"] = args.seed
    try:
        written = reproduce(args.figure, args.out, **kwargs)
    except (OSError, RuntimeError, ValueError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    return _cmd_reproduce(args)


if __name__ == "__main__":
    sys.exit(main())
