"""Preconfigured experiment families behind `mmwave-discovery reproduce`.

Each figure id maps to a family of experiments over the default radio
calibration:

* fig3:  switch-count CDFs of the random policy under five user
         distributions (per-user CSV per curve).
* fig5a: mean switches vs location-error scale, cell-edge population
         (forbidden disc), greedy and EDP at several sector counts.
* fig5b: mean switches vs EDP sector count at fixed error scales,
         cell-edge population, greedy baseline included.
* fig5c: as fig5a for the plain normal population.
* fig5d: as fig5b for the plain normal population, smaller error scales.
"""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path

from .config import DEFAULT_SEED, ExperimentConfig, PolicySpec
from .engine import run_experiment, sweep
from .report import emit, write_curve_csv, write_summary_json
from .scenario import LocationErrorSpec, PopulationSpec

FIGURE_IDS = ("fig3", "fig5a", "fig5b", "fig5c", "fig5d")

_ERROR_SCALES_M = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0)
_SECTOR_COUNTS = (1, 2, 3, 4, 6, 8, 12)
_CURVE_SECTORS = (1, 2, 3, 6, 12)


def _population(kind: str, sigma_m: float, forbidden_m: float, count: int) -> PopulationSpec:
    return PopulationSpec(kind=kind, sigma_m=sigma_m, forbidden_radius_m=forbidden_m, count=count)


def _fig3_curves(count: int) -> list[tuple[str, PopulationSpec]]:
    return [
        ("normal_sigma20", _population("normal", 20.0, 0.0, count)),
        ("normal_sigma40", _population("normal", 40.0, 0.0, count)),
        ("forbidden_s20_r50", _population("normal_forbidden", 20.0, 50.0, count)),
        ("forbidden_s40_r100", _population("normal_forbidden", 40.0, 100.0, count)),
        ("uniform", _population("uniform", 40.0, 0.0, count)),
    ]


def _base_config(seed: int) -> ExperimentConfig:
    return ExperimentConfig(seed=seed)


def _policy_curves() -> list[tuple[str, PolicySpec]]:
    curves = [("greedy", PolicySpec(name="greedy"))]
    curves += [(f"edp_n{n}", PolicySpec(name="edp", edp_sectors=n)) for n in _CURVE_SECTORS]
    return curves


def _value_tag(value: float) -> str:
    return f"{value:g}"


def _reproduce_fig3(out_dir: Path, seed: int, users: int | None, parallelism: int) -> list[Path]:
    written = []
    for label, population in _fig3_curves(_count(users)):
        cfg = replace(
            _base_config(seed),
            population=population,
            location_error=LocationErrorSpec("gaussian", 0.0),
            policy=PolicySpec(name="random"),
        )
        result = run_experiment(cfg, parallelism)
        written += emit(result, out_dir / f"{label}.csv", out_dir / f"{label}.summary.json")
    return written


def _reproduce_error_sweep(
    out_dir: Path, seed: int, users: int | None, parallelism: int, population: PopulationSpec
) -> list[Path]:
    written = []
    base = replace(_base_config(seed), population=population)
    for label, policy in _policy_curves():
        cfg = replace(base, policy=policy)
        results = sweep(cfg, "location_error_scale", _ERROR_SCALES_M, parallelism)
        points = list(zip(_ERROR_SCALES_M, results))
        written.append(write_curve_csv(out_dir / f"{label}.curve.csv", "location_error_scale", points))
        for value, result in points:
            written.append(
                write_summary_json(
                    result,
                    out_dir / f"{label}__location_error_scale_{_value_tag(value)}.summary.json",
                )
            )
    return written


def _reproduce_sector_sweep(
    out_dir: Path,
    seed: int,
    users: int | None,
    parallelism: int,
    population: PopulationSpec,
    error_scales_m: tuple[float, ...],
) -> list[Path]:
    written = []
    base = replace(_base_config(seed), population=population)
    for scale in error_scales_m:
        with_error = replace(base, location_error=LocationErrorSpec("gaussian", scale))
        tag = _value_tag(scale)

        cfg = replace(with_error, policy=PolicySpec(name="edp"))
        results = sweep(cfg, "edp_sectors", _SECTOR_COUNTS, parallelism)
        points = list(zip((float(n) for n in _SECTOR_COUNTS), results))
        written.append(
            write_curve_csv(out_dir / f"edp_err{tag}.curve.csv", "edp_sectors", points)
        )
        for value, result in points:
            written.append(
                write_summary_json(
                    result, out_dir / f"edp_err{tag}__edp_sectors_{_value_tag(value)}.summary.json"
                )
            )

        # greedy does not depend on the sector count: one run, constant curve
        greedy_result = run_experiment(replace(with_error, policy=PolicySpec(name="greedy")), parallelism)
        greedy_points = [(float(n), greedy_result) for n in _SECTOR_COUNTS]
        written.append(
            write_curve_csv(out_dir / f"greedy_err{tag}.curve.csv", "edp_sectors", greedy_points)
        )
        written.append(
            write_summary_json(greedy_result, out_dir / f"greedy_err{tag}.summary.json")
        )
    return written


def _count(users: int | None) -> int:
    return users if users is not None else 1000


def reproduce(
    figure_id: str,
    out_dir: str | Path,
    seed: int = DEFAULT_SEED,
    users: int | None = None,
    parallelism: int = 1,
) -> list[Path]:
    """Run one figure family and write its CSV/JSON artifacts.

    Raises ValueError for an unknown figure id (message lists valid ids).
    """
    if figure_id not in FIGURE_IDS:
        raise ValueError(
            f"unknown figure id {figure_id!r}; valid ids: {', '.join(FIGURE_IDS)}"
        )
    out = Path(out_dir) / figure_id
    forbidden = _population("normal_forbidden", 40.0, 100.0, _count(users))
    normal = _population("normal", 40.0, 0.0, _count(users))
    if figure_id == "fig3":
        return _reproduce_fig3(out, seed, users, parallelism)
    if figure_id == "fig5a":
        return _reproduce_error_sweep(out, seed, users, parallelism, forbidden)
    if figure_id == "fig5b":
        return _reproduce_sector_sweep(out, seed, users, parallelism, forbidden, (5.0, 10.0, 15.0, 20.0))
    if figure_id == "fig5c":
        return _reproduce_error_sweep(out, seed, users, parallelism, normal)
    return _reproduce_sector_sweep(out, seed, users, parallelism, normal, (2.0, 5.0, 10.0))
