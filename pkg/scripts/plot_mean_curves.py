#!/usr/bin/env python3
"""Mean-switches-vs-sweep-axis plot with confidence bars from curve CSVs.

Consumes only the documented curve schema
(axis,axis_value,mean_switches,ci_half_width,detected_count,unreachable_fraction);
one errorbar series per input file, all inputs sharing the same axis.
Deliberately independent of the simulator package.

    python scripts/plot_mean_curves.py --in results/fig5a/greedy.curve.csv \
        --in results/fig5a/edp_n3.curve.csv --out fig5a.png
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

EXPECTED_HEADER = [
    "axis",
    "axis_value",
    "mean_switches",
    "ci_half_width",
    "detected_count",
    "unreachable_fraction",
]

AXIS_LABELS = {
    "location_error_scale": "location error scale [m]",
    "edp_sectors": "search sectors n",
}


class SchemaError(ValueError):
    pass


def load_curve(path: str | Path) -> tuple[str, list[tuple[float, float, float]]]:
    """(axis name, [(axis value, mean, ci half-width), ...]) from one CSV."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"schema mismatch in {path}: empty file") from None
        if header != EXPECTED_HEADER:
            missing = [c for c in EXPECTED_HEADER if c not in header]
            if missing:
                raise SchemaError(
                    f"schema mismatch in {path}: missing column(s): {', '.join(missing)}"
                )
            raise SchemaError(
                f"schema mismatch in {path}: header must be {','.join(EXPECTED_HEADER)}"
            )
        axis = None
        points = []
        for row in reader:
            axis = axis or row[0]
            if row[0] != axis:
                raise SchemaError(f"{path}: mixed axis names {axis!r} and {row[0]!r}")
            if not row[2]:
                continue  # no detected users at this point
            half = float(row[3]) if row[3] else 0.0
            points.append((float(row[1]), float(row[2]), half))
    if axis is None or not points:
        raise SchemaError(f"{path}: no plottable rows")
    return axis, points


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        metavar="CSV", help="curve CSV over a sweep axis (repeatable)")
    parser.add_argument("--label", dest="labels", action="append", default=None,
                        help="series label, one per --in (default: file stem)")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)

    labels = args.labels or [Path(p).stem.replace(".curve", "") for p in args.inputs]
    if len(labels) != len(args.inputs):
        print("error: need exactly one --label per --in", file=sys.stderr)
        return 1

    try:
        curves = [(label, *load_curve(path)) for label, path in zip(labels, args.inputs)]
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    axes = {axis for _, axis, _ in curves}
    if len(axes) != 1:
        print(f"error: inputs sweep different axes: {sorted(axes)}", file=sys.stderr)
        return 1
    axis = axes.pop()

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, _, points in curves:
        xs = [x for x, _, _ in points]
        ys = [m for _, m, _ in points]
        errs = [h for _, _, h in points]
        ax.errorbar(xs, ys, yerr=errs, marker="o", capsize=3, label=label)
    ax.set_xlabel(AXIS_LABELS.get(axis, axis))
    ax.set_ylabel("mean beam switches (detected users)")
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
