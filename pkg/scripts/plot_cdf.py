#!/usr/bin/env python3
"""Step-CDF plot of beam-switch counts from per-user result CSVs.

Consumes only the documented per-user schema
(user_index,true_x,true_y,est_x,est_y,detected,switches); one step curve
per input file. Deliberately independent of the simulator package.

    python scripts/plot_cdf.py --in results/fig3/uniform.csv \
        --in results/fig3/normal_sigma40.csv --label uniform --label "sigma 40" \
        --out cdf.png
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

EXPECTED_HEADER = ["user_index", "true_x", "true_y", "est_x", "est_y", "detected", "switches"]


class SchemaError(ValueError):
    pass


def _check_header(path: Path, header: list[str]) -> None:
    if header == EXPECTED_HEADER:
        return
    missing = [c for c in EXPECTED_HEADER if c not in header]
    unexpected = [c for c in header if c not in EXPECTED_HEADER]
    parts = [f"schema mismatch in {path}"]
    if missing:
        parts.append(f"missing column(s): {', '.join(missing)}")
    if unexpected:
        parts.append(f"unexpected column(s): {', '.join(unexpected)}")
    if not missing and not unexpected:
        parts.append(f"column order must be {','.join(EXPECTED_HEADER)}")
    raise SchemaError("; ".join(parts))


def load_switches(path: str | Path) -> list[int]:
    """Switch counts of the detected users in one per-user CSV."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"schema mismatch in {path}: empty file") from None
        _check_header(path, header)
        switches = []
        for row in reader:
            if row[5] == "1":
                switches.append(int(row[6]))
    if not switches:
        raise SchemaError(f"{path}: no detected users, nothing to plot")
    return switches


def cdf_steps(samples: list[int]) -> list[tuple[int, float]]:
    """(value, cumulative fraction) at each distinct sample value."""
    n = len(samples)
    ordered = sorted(samples)
    steps = []
    seen = 0
    for i, v in enumerate(ordered):
        seen = i + 1
        if i + 1 == n or ordered[i + 1] != v:
            steps.append((v, seen / n))
    return steps


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        metavar="CSV", help="per-user result CSV (repeatable)")
    parser.add_argument("--label", dest="labels", action="append", default=None,
                        help="curve label, one per --in (default: file stem)")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)

    labels = args.labels or [Path(p).stem for p in args.inputs]
    if len(labels) != len(args.inputs):
        print("error: need exactly one --label per --in", file=sys.stderr)
        return 1

    try:
        curves = [(label, cdf_steps(load_switches(path)))
                  for label, path in zip(labels, args.inputs)]
    except (SchemaError, OSError, IndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, steps in curves:
        xs = [v for v, _ in steps]
        ys = [f for _, f in steps]
        # right-continuous step function starting from 0
        ax.step([xs[0]] + xs, [0.0] + ys, where="post", label=label)
    ax.set_xlabel("beam switches")
    ax.set_ylabel("cumulative fraction of detected users")
    ax.set_ylim(0.0, 1.02)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    try:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, dpi=150)
    except OSError as exc:
        print(f"error writing {args.out}: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
