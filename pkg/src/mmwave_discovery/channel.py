"""Pathloss, link budget, boresight range, and the detection predicate.

The channel is deterministic: all uncertainty is carried by the position
estimate, so whether a probe beam is heard by a UE is a pure function of
geometry and budget. The UE antenna is isotropic (0 dBi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .antenna import BeamConfig, gain_db, peak_gain_db
from .geometry import Point2D, azimuth_to


@dataclass(frozen=True)
class PathlossModel:
    """Two-slope log-distance pathloss: alpha + 10*k*log10(l/l0).

    The exponent is `k_far` beyond the reference distance and `k_near`
    inside it; both branches meet at alpha for l = l0.
    """

    alpha_db: float = 82.02
    l0_m: float = 5.0
    k_far: float = 2.36
    k_near: float = 2.00

    def __post_init__(self) -> None:
        if self.l0_m <= 0.0:
            raise ValueError(f"reference distance must be positive, got {self.l0_m}")
        if self.k_far <= 0.0 or self.k_near <= 0.0:
            raise ValueError("pathloss exponents must be positive")

    def pathloss_db(self, distance_m: float) -> float:
        if distance_m <= 0.0:
            raise ValueError(f"distance must be positive, got {distance_m}")
        k = self.k_far if distance_m > self.l0_m else self.k_near
        return self.alpha_db + 10.0 * k * math.log10(distance_m / self.l0_m)

    def invert_far_db(self, pathloss_db: float) -> float:
        """Distance (>= l0) whose far-branch pathloss equals `pathloss_db`."""
        return self.l0_m * 10.0 ** ((pathloss_db - self.alpha_db) / (10.0 * self.k_far))


@dataclass(frozen=True)
class LinkBudget:
    """Transmit power, noise floor, and the SNR detection threshold."""

    tx_power_dbm: float
    noise_floor_dbm: float = -84.0
    snr_threshold_db: float = 10.0

    def __post_init__(self) -> None:
        if self.snr_threshold_db < 0.0:
            raise ValueError(f"SNR threshold must be >= 0 dB, got {self.snr_threshold_db}")

    @property
    def detection_threshold_dbm(self) -> float:
        """Minimum received power that counts as detected."""
        return self.noise_floor_dbm + self.snr_threshold_db


def pathloss(model: PathlossModel, distance_m: float) -> float:
    """Pathloss in dB at the given distance."""
    return model.pathloss_db(distance_m)


def received_power_dbm(
    budget: LinkBudget,
    beam: BeamConfig,
    bs: Point2D,
    ue: Point2D,
    pathloss_model: PathlossModel = PathlossModel(),
    elevation_width_rad: float = 0.1745,
    lobe_model: str = "quadratic",
    gain_floor_db: float | None = None,
) -> float:
    """Power at the UE in dBm: tx + BS gain toward the UE - pathloss."""
    g = gain_db(beam, azimuth_to(bs, ue), elevation_width_rad, lobe_model, gain_floor_db)
    return budget.tx_power_dbm + g - pathloss_model.pathloss_db(bs.distance_to(ue))


def detects(
    budget: LinkBudget,
    beam: BeamConfig,
    bs: Point2D,
    ue: Point2D,
    pathloss_model: PathlossModel = PathlossModel(),
    elevation_width_rad: float = 0.1745,
    lobe_model: str = "quadratic",
    gain_floor_db: float | None = None,
) -> bool:
    """True iff the UE hears the probe beam (received power >= threshold)."""
    rx = received_power_dbm(
        budget, beam, bs, ue, pathloss_model, elevation_width_rad, lobe_model, gain_floor_db
    )
    return rx >= budget.detection_threshold_dbm


def boresight_range_m(
    budget: LinkBudget,
    width_rad: float,
    elevation_width_rad: float,
    pathloss_model: PathlossModel = PathlossModel(),
) -> float:
    """Largest distance at which a UE on the boresight is detected.

    Closed-form inversion of the pathloss at the beam's peak gain. Returns
    0.0 when the budget cannot even cover the reference distance l0 (no
    coverage); any covered beam has range >= l0.
    """
    max_pathloss = (
        budget.tx_power_dbm
        + peak_gain_db(width_rad, elevation_width_rad)
        - budget.detection_threshold_dbm
    )
    if max_pathloss < pathloss_model.alpha_db:
        return 0.0
    return pathloss_model.invert_far_db(max_pathloss)


def calibrate_tx_power_dbm(
    noise_floor_dbm: float,
    snr_threshold_db: float,
    narrowest_width_rad: float,
    elevation_width_rad: float,
    target_range_m: float,
    pathloss_model: PathlossModel = PathlossModel(),
) -> float:
    """Transmit power making the narrowest beam's boresight range `target_range_m`.

    The reported absolute switch counts depend on this unstated quantity, so
    the calibration target is an explicit config constant echoed in every
    result header.
    """
    if target_range_m < pathloss_model.l0_m:
        raise ValueError(
            f"calibration target {target_range_m} m is below the reference distance"
        )
    threshold = noise_floor_dbm + snr_threshold_db
    return (
        threshold
        + pathloss_model.pathloss_db(target_range_m)
        - peak_gain_db(narrowest_width_rad, elevation_width_rad)
    )
