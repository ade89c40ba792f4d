"""Experiment configuration: schema, validation, defaults, and calibration.

Configs are plain YAML mappings whose keys carry explicit units
(sigma_m, tx_power_dbm, ...). Every field has a default, so an empty file
is a valid config. Validation collects all offending fields before
reporting. The transmit power may be left null, in which case it is
calibrated so the narrowest beam's boresight range equals
`calibration_range_m`; the resolved value is echoed in every result
header.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

import yaml

from .antenna import DEFAULT_DIRECTION_COUNTS, DEFAULT_ELEVATION_WIDTH_RAD, LOBE_MODELS, Codebook
from .channel import LinkBudget, PathlossModel, calibrate_tx_power_dbm
from .geometry import Point2D
from .scenario import ERROR_KINDS, POPULATION_KINDS, Deployment, LocationErrorSpec, PopulationSpec

POLICY_NAMES = ("random", "greedy", "edp")
SWEEP_AXES = ("location_error_scale", "edp_sectors")

DEFAULT_NOISE_FLOOR_DBM = -84.0
DEFAULT_SNR_THRESHOLD_DB = 10.0
DEFAULT_CALIBRATION_RANGE_M = 200.0
DEFAULT_SEED = 42


class ConfigError(ValueError):
    """Invalid experiment config; `problems` lists offending fields."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("invalid config: " + "; ".join(self.problems))


@dataclass(frozen=True)
class PolicySpec:
    """Which discovery algorithm to run and its parameters."""

    name: str = "greedy"
    edp_sectors: int = 1
    probe_wider_after: bool = False

    def __post_init__(self) -> None:
        if self.name not in POLICY_NAMES:
            raise ValueError(f"unknown policy {self.name!r}, expected one of {POLICY_NAMES}")
        if self.edp_sectors < 1:
            raise ValueError(f"edp_sectors must be >= 1, got {self.edp_sectors}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved inputs for one experiment (or one sweep)."""

    deployment: Deployment = field(default_factory=Deployment)
    population: PopulationSpec = field(default_factory=PopulationSpec)
    location_error: LocationErrorSpec = field(default_factory=LocationErrorSpec)
    pathloss: PathlossModel = field(default_factory=PathlossModel)
    codebook: Codebook = field(default_factory=Codebook)
    noise_floor_dbm: float = DEFAULT_NOISE_FLOOR_DBM
    snr_threshold_db: float = DEFAULT_SNR_THRESHOLD_DB
    tx_power_dbm: float | None = None
    calibration_range_m: float = DEFAULT_CALIBRATION_RANGE_M
    lobe_model: str = "quadratic"
    gain_floor_db: float | None = None
    policy: PolicySpec = field(default_factory=PolicySpec)
    seed: int = DEFAULT_SEED
    ci_confidence: float = 0.95
    sweep_axis: str | None = None
    sweep_values: tuple[float, ...] = ()

    @property
    def tx_power_is_calibrated(self) -> bool:
        return self.tx_power_dbm is None

    def resolved_tx_power_dbm(self) -> float:
        if self.tx_power_dbm is not None:
            return self.tx_power_dbm
        return calibrate_tx_power_dbm(
            self.noise_floor_dbm,
            self.snr_threshold_db,
            self.codebook.narrowest_width,
            self.codebook.elevation_width_rad,
            self.calibration_range_m,
            self.pathloss,
        )

    def link_budget(self) -> LinkBudget:
        return LinkBudget(
            tx_power_dbm=self.resolved_tx_power_dbm(),
            noise_floor_dbm=self.noise_floor_dbm,
            snr_threshold_db=self.snr_threshold_db,
        )

    def with_seed(self, seed: int) -> "ExperimentConfig":
        return replace(self, seed=seed)

    def echo(self) -> dict:
        """Resolved constants in config-file shape, for result headers."""
        return {
            "seed": self.seed,
            "deployment": {
                "area_width_m": self.deployment.area_width_m,
                "area_height_m": self.deployment.area_height_m,
                "inter_site_m": self.deployment.inter_site_m,
                "bs_positions_m": [[p.x, p.y] for p in self.deployment.bs_positions],
            },
            "population": {
                "kind": self.population.kind,
                "sigma_m": self.population.sigma_m,
                "forbidden_radius_m": self.population.forbidden_radius_m,
                "count": self.population.count,
            },
            "location_error": {
                "kind": self.location_error.kind,
                "scale_m": self.location_error.scale_m,
            },
            "pathloss": {
                "alpha_db": self.pathloss.alpha_db,
                "l0_m": self.pathloss.l0_m,
                "k_far": self.pathloss.k_far,
                "k_near": self.pathloss.k_near,
            },
            "link_budget": {
                "tx_power_dbm": self.resolved_tx_power_dbm(),
                "tx_power_calibrated": self.tx_power_is_calibrated,
                "calibration_range_m": self.calibration_range_m,
                "noise_floor_dbm": self.noise_floor_dbm,
                "snr_threshold_db": self.snr_threshold_db,
            },
            "antenna": {
                "direction_counts": list(self.codebook.direction_counts),
                "elevation_width_rad": self.codebook.elevation_width_rad,
                "lobe_model": self.lobe_model,
                "gain_floor_db": self.gain_floor_db,
            },
            "policy": {
                "name": self.policy.name,
                "edp_sectors": self.policy.edp_sectors,
                "probe_wider_after": self.policy.probe_wider_after,
            },
            "stats": {"ci_confidence": self.ci_confidence},
            "sweep": {
                "axis": self.sweep_axis,
                "values": list(self.sweep_values),
            },
            "mean_convention": "mean over detected users only",
        }


_SECTION_KEYS = {
    "deployment": {"area_width_m", "area_height_m", "inter_site_m", "bs_positions_m"},
    "population": {"kind", "sigma_m", "forbidden_radius_m", "count"},
    "location_error": {"kind", "scale_m"},
    "pathloss": {"alpha_db", "l0_m", "k_far", "k_near"},
    "link_budget": {"tx_power_dbm", "noise_floor_dbm", "snr_threshold_db", "calibration_range_m"},
    "antenna": {"direction_counts", "elevation_width_rad", "lobe_model", "gain_floor_db"},
    "policy": {"name", "edp_sectors", "probe_wider_after"},
    "stats": {"ci_confidence"},
    "sweep": {"axis", "values"},
}
_TOP_KEYS = {"seed"} | set(_SECTION_KEYS)


class _Reader:
    """Pulls typed values out of a nested mapping, collecting problems."""

    def __init__(self, data: dict):
        self.data = data
        self.problems: list[str] = []

    def section(self, name: str) -> dict:
        raw = self.data.get(name)
        if raw is None:
            return {}
        if not isinstance(raw, dict):
            self.problems.append(f"{name}: must be a mapping")
            return {}
        for key in raw:
            if key not in _SECTION_KEYS[name]:
                self.problems.append(f"{name}.{key}: unknown key")
        return raw

    def number(self, section: dict, section_name: str, key: str, default, minimum=None,
               allow_none: bool = False):
        if key not in section:
            return default
        value = section[key]
        if value is None and allow_none:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.problems.append(f"{section_name}.{key}: must be a number, got {value!r}")
            return default
        if minimum is not None and value < minimum:
            self.problems.append(f"{section_name}.{key}: must be >= {minimum}, got {value}")
            return default
        return float(value)

    def integer(self, section: dict, section_name: str, key: str, default, minimum=None):
        if key not in section:
            return default
        value = section[key]
        if isinstance(value, bool) or not isinstance(value, int):
            self.problems.append(f"{section_name}.{key}: must be an integer, got {value!r}")
            return default
        if minimum is not None and value < minimum:
            self.problems.append(f"{section_name}.{key}: must be >= {minimum}, got {value}")
            return default
        return value

    def choice(self, section: dict, section_name: str, key: str, default, choices):
        if key not in section:
            return default
        value = section[key]
        if value not in choices:
            self.problems.append(
                f"{section_name}.{key}: must be one of {sorted(choices)}, got {value!r}"
            )
            return default
        return value

    def boolean(self, section: dict, section_name: str, key: str, default):
        if key not in section:
            return default
        value = section[key]
        if not isinstance(value, bool):
            self.problems.append(f"{section_name}.{key}: must be a boolean, got {value!r}")
            return default
        return value


def config_from_dict(data: dict | None) -> ExperimentConfig:
    """Build a validated config from a parsed mapping.

    Raises ConfigError listing every offending field.
    """
    data = data or {}
    if not isinstance(data, dict):
        raise ConfigError(["config root: must be a mapping"])
    r = _Reader(data)
    for key in data:
        if key not in _TOP_KEYS:
            r.problems.append(f"{key}: unknown key")

    seed = DEFAULT_SEED
    if "seed" in data:
        if isinstance(data["seed"], bool) or not isinstance(data["seed"], int) or data["seed"] < 0:
            r.problems.append(f"seed: must be a non-negative integer, got {data['seed']!r}")
        else:
            seed = data["seed"]

    dep = r.section("deployment")
    area_w = r.number(dep, "deployment", "area_width_m", 1000.0, minimum=1.0)
    area_h = r.number(dep, "deployment", "area_height_m", 1000.0, minimum=1.0)
    inter = r.number(dep, "deployment", "inter_site_m", 200.0, minimum=0.0)
    bs_positions: tuple[Point2D, ...] = ()
    if "bs_positions_m" in dep:
        raw = dep["bs_positions_m"]
        ok = isinstance(raw, list) and raw and all(
            isinstance(p, list) and len(p) == 2
            and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in p)
            for p in raw
        )
        if not ok:
            r.problems.append("deployment.bs_positions_m: must be a non-empty list of [x, y] pairs")
        else:
            bs_positions = tuple(Point2D(float(p[0]), float(p[1])) for p in raw)

    pop = r.section("population")
    pop_kind = r.choice(pop, "population", "kind", "normal_forbidden", POPULATION_KINDS)
    sigma = r.number(pop, "population", "sigma_m", 40.0)
    forb = r.number(pop, "population", "forbidden_radius_m", 100.0, minimum=0.0)
    count = r.integer(pop, "population", "count", 1000, minimum=1)
    if pop_kind in ("normal", "normal_forbidden") and sigma is not None and sigma <= 0.0:
        r.problems.append(f"population.sigma_m: must be > 0, got {sigma}")

    err = r.section("location_error")
    err_kind = r.choice(err, "location_error", "kind", "gaussian", ERROR_KINDS)
    err_scale = r.number(err, "location_error", "scale_m", 0.0, minimum=0.0)

    pl = r.section("pathloss")
    alpha = r.number(pl, "pathloss", "alpha_db", 82.02)
    l0 = r.number(pl, "pathloss", "l0_m", 5.0)
    k_far = r.number(pl, "pathloss", "k_far", 2.36)
    k_near = r.number(pl, "pathloss", "k_near", 2.00)
    if l0 is not None and l0 <= 0.0:
        r.problems.append(f"pathloss.l0_m: must be > 0, got {l0}")
    for key, val in (("k_far", k_far), ("k_near", k_near)):
        if val is not None and val <= 0.0:
            r.problems.append(f"pathloss.{key}: must be > 0, got {val}")

    lb = r.section("link_budget")
    tx = r.number(lb, "link_budget", "tx_power_dbm", None, allow_none=True)
    noise = r.number(lb, "link_budget", "noise_floor_dbm", DEFAULT_NOISE_FLOOR_DBM)
    snr = r.number(lb, "link_budget", "snr_threshold_db", DEFAULT_SNR_THRESHOLD_DB, minimum=0.0)
    calib = r.number(lb, "link_budget", "calibration_range_m", DEFAULT_CALIBRATION_RANGE_M)
    if calib is not None and l0 is not None and calib < l0:
        r.problems.append(
            f"link_budget.calibration_range_m: must be >= pathloss.l0_m ({l0}), got {calib}"
        )

    ant = r.section("antenna")
    counts = DEFAULT_DIRECTION_COUNTS
    if "direction_counts" in ant:
        raw = ant["direction_counts"]
        ok = isinstance(raw, list) and raw and all(
            isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in raw
        )
        if ok and any(b <= a for a, b in zip(raw, raw[1:])):
            r.problems.append("antenna.direction_counts: must be strictly increasing")
        elif not ok:
            r.problems.append("antenna.direction_counts: must be a strictly increasing list of integers >= 1")
        else:
            counts = tuple(raw)
    elevation = r.number(ant, "antenna", "elevation_width_rad", DEFAULT_ELEVATION_WIDTH_RAD)
    if elevation is not None and elevation <= 0.0:
        r.problems.append(f"antenna.elevation_width_rad: must be > 0, got {elevation}")
    lobe = r.choice(ant, "antenna", "lobe_model", "quadratic", LOBE_MODELS)
    floor = r.number(ant, "antenna", "gain_floor_db", None, allow_none=True)

    pol = r.section("policy")
    pol_name = r.choice(pol, "policy", "name", "greedy", POLICY_NAMES)
    pol_sectors = r.integer(pol, "policy", "edp_sectors", 1, minimum=1)
    pol_wider = r.boolean(pol, "policy", "probe_wider_after", False)

    st = r.section("stats")
    ci_conf = r.number(st, "stats", "ci_confidence", 0.95)
    if ci_conf is not None and not 0.0 < ci_conf < 1.0:
        r.problems.append(f"stats.ci_confidence: must be in (0, 1), got {ci_conf}")

    sw = r.section("sweep")
    sweep_axis = r.choice(sw, "sweep", "axis", None, SWEEP_AXES)
    sweep_values: tuple[float, ...] = ()
    if "values" in sw:
        raw = sw["values"]
        ok = isinstance(raw, list) and raw and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw
        )
        if not ok:
            r.problems.append("sweep.values: must be a non-empty list of numbers")
        else:
            sweep_values = tuple(float(v) for v in raw)
    if sweep_axis is not None and not sweep_values:
        r.problems.append("sweep.values: required when sweep.axis is set")
    if sweep_axis == "edp_sectors":
        if any(v != int(v) or v < 1 for v in sweep_values):
            r.problems.append("sweep.values: edp_sectors values must be integers >= 1")

    if r.problems:
        raise ConfigError(r.problems)

    try:
        return ExperimentConfig(
            deployment=Deployment(area_w, area_h, inter, bs_positions),
            population=PopulationSpec(pop_kind, sigma, forb, count),
            location_error=LocationErrorSpec(err_kind, err_scale),
            pathloss=PathlossModel(alpha, l0, k_far, k_near),
            codebook=Codebook(counts, elevation),
            noise_floor_dbm=noise,
            snr_threshold_db=snr,
            tx_power_dbm=tx,
            calibration_range_m=calib,
            lobe_model=lobe,
            gain_floor_db=floor,
            policy=PolicySpec(pol_name, pol_sectors, pol_wider),
            seed=seed,
            ci_confidence=ci_conf,
            sweep_axis=sweep_axis,
            sweep_values=sweep_values,
        )
    except ValueError as exc:  # cross-field checks inside the dataclasses
        raise ConfigError([str(exc)]) from exc


def load_config(path: str | Path) -> ExperimentConfig:
    """Load and validate a YAML config file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError([f"config file {path}: {exc.strerror or exc}"]) from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError([f"config file {path}: not valid YAML ({exc})"]) from exc
    return config_from_dict(data)
