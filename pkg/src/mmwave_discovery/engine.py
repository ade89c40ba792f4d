"""Trial execution, population aggregation, and parameter sweeps.

A trial walks one user's probe sequence against the deterministic channel
and records the 1-based index of the first detecting probe (the number of
beam switches). Trials are independent; per-user randomness comes from
substreams keyed by (seed, stream, user index), so parallel and serial
runs produce identical results. Mean switch counts are taken over detected
users only; the unreachable fraction is reported separately.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

from .antenna import BeamConfig, Codebook, peak_gain_db
from .channel import LinkBudget, PathlossModel
from .config import ExperimentConfig, SWEEP_AXES
from .geometry import TWO_PI, Point2D, azimuth_to
from .policy import ProbeSequence, edp_sequence, greedy_sequence, initial_config, random_sequence
from .scenario import STREAM_POLICY, UserDrop, drop_users, substream
from .stats import mean_ci


@dataclass(frozen=True)
class Radio:
    """Everything the channel needs to score one probe."""

    budget: LinkBudget
    pathloss: PathlossModel
    codebook: Codebook
    lobe_model: str = "quadratic"
    gain_floor_db: float | None = None


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one user's discovery episode."""

    user_index: int
    detected: bool
    switches: int | None
    detecting_beam: BeamConfig | None


@dataclass(frozen=True)
class ExperimentResult:
    """Per-user outcomes plus aggregates and the resolved config echo."""

    config_echo: dict
    users: tuple[UserDrop, ...]
    trials: tuple[TrialResult, ...]
    mean_switches: float | None
    ci_half_width: float | None
    ci_confidence: float
    unreachable_fraction: float
    histogram: tuple[tuple[int, int], ...]

    @property
    def detected_count(self) -> int:
        return sum(1 for t in self.trials if t.detected)

    def detected_switches(self) -> list[int]:
        return [t.switches for t in self.trials if t.detected]

    def summary_dict(self) -> dict:
        return {
            "config": self.config_echo,
            "user_count": len(self.trials),
            "detected_count": self.detected_count,
            "unreachable_fraction": self.unreachable_fraction,
            "mean_switches": self.mean_switches,
            "ci_confidence": self.ci_confidence,
            "ci_half_width": self.ci_half_width,
            "histogram": [list(pair) for pair in self.histogram],
        }


def run_trial(radio: Radio, bs: Point2D, user: UserDrop, sequence: ProbeSequence) -> TrialResult:
    """Walk the probe sequence in order; switches = index of the first hit.

    Detection matches channel.detects exactly: received power at the true
    position >= the budget's detection threshold.
    """
    if not sequence.probes:
        raise ValueError("probe sequence must be nonempty")
    ue_azimuth = azimuth_to(bs, user.true_pos)
    distance = bs.distance_to(user.true_pos)
    # required gain = threshold - tx + pathloss; beams detect iff gain >= it
    required_gain = (
        radio.budget.detection_threshold_dbm
        - radio.budget.tx_power_dbm
        + radio.pathloss.pathloss_db(distance)
    )
    elevation = radio.codebook.elevation_width_rad
    quadratic = radio.lobe_model == "quadratic"
    floor = radio.gain_floor_db
    peaks: dict[float, float] = {}
    for i, probe in enumerate(sequence.probes):
        peak = peaks.get(probe.width_rad)
        if peak is None:
            peak = peak_gain_db(probe.width_rad, elevation)
            peaks[probe.width_rad] = peak
        delta = abs(probe.boresight_rad - ue_azimuth)
        if delta > math.pi:
            delta = TWO_PI - delta
        ratio = delta / probe.width_rad
        gain = peak - 12.0 * (ratio * ratio if quadratic else ratio)
        if floor is not None and gain < floor:
            gain = floor
        if gain >= required_gain:
            return TrialResult(user.user_index, True, i + 1, probe)
    return TrialResult(user.user_index, False, None, None)


def build_sequence(cfg: ExperimentConfig, radio: Radio, bs: Point2D, user: UserDrop) -> ProbeSequence:
    """The probe sequence the configured policy would run for this user."""
    if cfg.policy.name == "random":
        return random_sequence(radio.codebook, substream(cfg.seed, STREAM_POLICY, user.user_index))
    init = initial_config(radio.budget, radio.codebook, bs, user.est_pos, radio.pathloss)
    if cfg.policy.name == "greedy":
        return greedy_sequence(init, radio.codebook, cfg.policy.probe_wider_after)
    return edp_sequence(init, radio.codebook, cfg.policy.edp_sectors, cfg.policy.probe_wider_after)


def _radio_for(cfg: ExperimentConfig) -> Radio:
    return Radio(
        budget=cfg.link_budget(),
        pathloss=cfg.pathloss,
        codebook=cfg.codebook,
        lobe_model=cfg.lobe_model,
        gain_floor_db=cfg.gain_floor_db,
    )


def _run_user_slice(cfg: ExperimentConfig, users: Sequence[UserDrop]) -> list[TrialResult]:
    radio = _radio_for(cfg)
    out = []
    for user in users:
        bs = cfg.deployment.bs_positions[user.serving_bs]
        out.append(run_trial(radio, bs, user, build_sequence(cfg, radio, bs, user)))
    return out


def run_experiment(cfg: ExperimentConfig, parallelism: int = 1) -> ExperimentResult:
    """Sample the population, run every trial, and aggregate.

    Fully determined by (cfg, cfg.seed); the parallelism degree never
    changes the result, only how the independent trials are scheduled.
    """
    if parallelism < 1:
        raise ValueError(f"parallelism must be >= 1, got {parallelism}")
    users = drop_users(cfg.population, cfg.location_error, cfg.deployment, cfg.seed)
    if parallelism == 1 or len(users) < 2 * parallelism:
        trials = _run_user_slice(cfg, users)
    else:
        chunk = math.ceil(len(users) / parallelism)
        slices = [users[i : i + chunk] for i in range(0, len(users), chunk)]
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            parts = list(pool.map(_run_user_slice, [cfg] * len(slices), slices))
        trials = [t for part in parts for t in part]
    return _aggregate(cfg, users, trials)


def _aggregate(
    cfg: ExperimentConfig, users: Sequence[UserDrop], trials: Sequence[TrialResult]
) -> ExperimentResult:
    switches = sorted(t.switches for t in trials if t.detected)
    counts: dict[int, int] = {}
    for s in switches:
        counts[s] = counts.get(s, 0) + 1
    if len(switches) >= 2:
        mean, half_width = mean_ci(switches, cfg.ci_confidence)
    elif switches:
        mean, half_width = float(switches[0]), None
    else:
        mean, half_width = None, None
    return ExperimentResult(
        config_echo=cfg.echo(),
        users=tuple(users),
        trials=tuple(trials),
        mean_switches=mean,
        ci_half_width=half_width,
        ci_confidence=cfg.ci_confidence,
        unreachable_fraction=1.0 - len(switches) / len(trials),
        histogram=tuple(sorted(counts.items())),
    )


def config_for_sweep_value(cfg: ExperimentConfig, axis: str, value: float) -> ExperimentConfig:
    """The point config for one sweep value; the seed is left untouched."""
    if axis == "location_error_scale":
        return replace(cfg, location_error=replace(cfg.location_error, scale_m=float(value)))
    if axis == "edp_sectors":
        return replace(cfg, policy=replace(cfg.policy, edp_sectors=int(value)))
    raise ValueError(f"unknown sweep axis {axis!r}, expected one of {SWEEP_AXES}")


def sweep(
    cfg: ExperimentConfig,
    axis: str,
    values: Sequence[float],
    parallelism: int = 1,
) -> list[ExperimentResult]:
    """One experiment per axis value under common random numbers.

    The seed and therefore the sampled population are identical across
    points: an error-scale sweep reuses the same true positions (and paired
    error directions), a sector sweep reuses the same estimates.
    """
    if not values:
        raise ValueError("sweep needs at least one value")
    return [run_experiment(config_for_sweep_value(cfg, axis, v), parallelism) for v in values]
