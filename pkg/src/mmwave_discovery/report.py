"""Serialization of experiment results: per-user CSV, summary JSON, curve CSV.

All files are UTF-8 with LF line endings and byte-for-byte reproducible
from (config, seed). Floats are written with repr, which round-trips
exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

from .engine import ExperimentResult

# Documented per-user schema; the header row must match this string exactly.
CSV_HEADER = "user_index,true_x,true_y,est_x,est_y,detected,switches"

# One row per sweep point of one curve.
CURVE_CSV_HEADER = "axis,axis_value,mean_switches,ci_half_width,detected_count,unreachable_fraction"


def _fmt(value: float | int | None) -> str:
    if value is None:
        return ""
    return repr(value) if isinstance(value, float) else str(value)


def user_rows(result: ExperimentResult) -> list[str]:
    rows = []
    for user, trial in zip(result.users, result.trials):
        rows.append(
            ",".join(
                (
                    str(user.user_index),
                    _fmt(user.true_pos.x),
                    _fmt(user.true_pos.y),
                    _fmt(user.est_pos.x),
                    _fmt(user.est_pos.y),
                    "1" if trial.detected else "0",
                    _fmt(trial.switches),
                )
            )
        )
    return rows


def write_users_csv(result: ExperimentResult, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = "\n".join([CSV_HEADER, *user_rows(result)]) + "\n"
    path.write_text(text, encoding="utf-8", newline="\n")
    return path


def write_summary_json(result: ExperimentResult, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(result.summary_dict(), indent=2, sort_keys=True) + "\n"
    path.write_text(text, encoding="utf-8", newline="\n")
    return path


def emit(result: ExperimentResult, csv_path: str | Path, json_path: str | Path) -> list[Path]:
    """Write the per-user CSV and the summary JSON for one experiment."""
    return [write_users_csv(result, csv_path), write_summary_json(result, json_path)]


def write_curve_csv(
    path: str | Path,
    axis: str,
    points: Sequence[tuple[float, ExperimentResult]],
) -> Path:
    """One curve over a sweep axis: (axis value, aggregate) per row."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = [CURVE_CSV_HEADER]
    for value, result in points:
        rows.append(
            ",".join(
                (
                    axis,
                    _fmt(float(value)),
                    _fmt(result.mean_switches),
                    _fmt(result.ci_half_width),
                    str(result.detected_count),
                    _fmt(result.unreachable_fraction),
                )
            )
        )
    path.write_text("\n".join(rows) + "\n", encoding="utf-8", newline="\n")
    return path


def header_lines(result: ExperimentResult) -> list[str]:
    """Human-readable result header echoing the resolved calibration."""
    echo = result.config_echo
    lb = echo["link_budget"]
    tx_note = (
        f" (calibrated: narrowest-beam boresight range {lb['calibration_range_m']} m)"
        if lb["tx_power_calibrated"]
        else ""
    )
    pol = echo["policy"]
    policy_note = pol["name"] if pol["name"] != "edp" else f"edp (sectors={pol['edp_sectors']})"
    mean = result.mean_switches
    return [
        f"policy: {policy_note}",
        f"seed: {echo['seed']}",
        f"tx_power_dbm: {lb['tx_power_dbm']:.4f}{tx_note}",
        f"noise_floor_dbm: {lb['noise_floor_dbm']}  snr_threshold_db: {lb['snr_threshold_db']}",
        f"population: {echo['population']['kind']} count={echo['population']['count']}",
        f"location_error: {echo['location_error']['kind']} scale_m={echo['location_error']['scale_m']}",
        f"users detected: {result.detected_count}/{len(result.trials)}"
        f"  unreachable_fraction: {result.unreachable_fraction:.4f}",
        "mean_switches (detected users only): "
        + (f"{mean:.4f} +/- {result.ci_half_width:.4f}" if mean is not None and result.ci_half_width is not None else str(mean)),
    ]
