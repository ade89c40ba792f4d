"""Base-station layout, user-population generators, and the position-estimate model.

All sampling is driven by per-user substreams derived from (seed, stream,
user index), so draws are reproducible bit-for-bit and independent of the
order in which users are generated. Pathloss uncertainty and localization
error are merged into a single equivalent location error applied to the
true position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Point2D

POPULATION_KINDS = ("normal", "normal_forbidden", "uniform")
ERROR_KINDS = ("gaussian", "disc_uniform")

# Stream tags keeping population, estimate-error, and policy draws independent.
STREAM_POPULATION = 0
STREAM_ERROR = 1
STREAM_POLICY = 2

_MAX_REJECTION_TRIES = 10_000


def substream(seed: int, stream: int, index: int) -> np.random.Generator:
    """Independent per-user generator keyed by (seed, stream, user index)."""
    return np.random.default_rng([seed, stream, index])


def default_bs_positions(
    area_width_m: float, area_height_m: float, inter_site_m: float
) -> tuple[Point2D, ...]:
    """Five-site plus-shaped layout centered in the area.

    One BS at the area center and four at the inter-site distance along the
    axes; the minimum pairwise distance equals `inter_site_m`.
    """
    cx, cy = area_width_m / 2.0, area_height_m / 2.0
    d = inter_site_m
    return (
        Point2D(cx, cy),
        Point2D(cx + d, cy),
        Point2D(cx - d, cy),
        Point2D(cx, cy + d),
        Point2D(cx, cy - d),
    )


@dataclass(frozen=True)
class Deployment:
    """Simulation area plus fixed BS positions."""

    area_width_m: float = 1000.0
    area_height_m: float = 1000.0
    inter_site_m: float = 200.0
    bs_positions: tuple[Point2D, ...] = ()

    def __post_init__(self) -> None:
        if self.area_width_m <= 0.0 or self.area_height_m <= 0.0:
            raise ValueError("area dimensions must be positive")
        positions = self.bs_positions or default_bs_positions(
            self.area_width_m, self.area_height_m, self.inter_site_m
        )
        positions = tuple(positions)
        for p in positions:
            if not (0.0 <= p.x <= self.area_width_m and 0.0 <= p.y <= self.area_height_m):
                raise ValueError(f"BS at ({p.x}, {p.y}) lies outside the area")
        for i, a in enumerate(positions):
            for b in positions[i + 1 :]:
                if a.distance_to(b) < self.inter_site_m:
                    raise ValueError(
                        f"BS pair ({a}, {b}) closer than inter-site distance "
                        f"{self.inter_site_m} m"
                    )
        object.__setattr__(self, "bs_positions", positions)

    def contains(self, p: Point2D) -> bool:
        return 0.0 <= p.x <= self.area_width_m and 0.0 <= p.y <= self.area_height_m

    def nearest_bs(self, p: Point2D) -> int:
        """Index of the closest BS; ties go to the lowest index."""
        best, best_d = 0, math.inf
        for i, bs in enumerate(self.bs_positions):
            d = bs.distance_to(p)
            if d < best_d:
                best, best_d = i, d
        return best


@dataclass(frozen=True)
class PopulationSpec:
    """How user true positions are drawn.

    normal:            per-BS 2D normal (BS chosen uniformly, offset N(0, sigma^2 I))
    normal_forbidden:  same, rejection-resampled outside a disc around the BS
    uniform:           uniform over the whole area
    """

    kind: str = "normal_forbidden"
    sigma_m: float = 40.0
    forbidden_radius_m: float = 100.0
    count: int = 1000

    def __post_init__(self) -> None:
        if self.kind not in POPULATION_KINDS:
            raise ValueError(f"unknown population kind {self.kind!r}")
        if self.kind in ("normal", "normal_forbidden") and self.sigma_m <= 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma_m}")
        if self.forbidden_radius_m < 0.0:
            raise ValueError("forbidden radius must be >= 0")
        if self.count < 1:
            raise ValueError(f"population count must be >= 1, got {self.count}")


@dataclass(frozen=True)
class LocationErrorSpec:
    """Equivalent location error applied to the true position.

    gaussian:     estimate = true + N(0, scale^2 I)
    disc_uniform: estimate = true + uniform point in a disc of radius scale
    """

    kind: str = "gaussian"
    scale_m: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ERROR_KINDS:
            raise ValueError(f"unknown location error kind {self.kind!r}")
        if self.scale_m < 0.0:
            raise ValueError(f"error scale must be >= 0, got {self.scale_m}")


@dataclass(frozen=True)
class UserDrop:
    """One user: ground-truth position, context estimate, serving BS index."""

    user_index: int
    true_pos: Point2D
    est_pos: Point2D
    serving_bs: int


def _sample_true_position(
    spec: PopulationSpec, deployment: Deployment, rng: np.random.Generator
) -> Point2D:
    if spec.kind == "uniform":
        return Point2D(
            rng.uniform(0.0, deployment.area_width_m),
            rng.uniform(0.0, deployment.area_height_m),
        )
    bss = deployment.bs_positions
    home = bss[int(rng.integers(len(bss)))]
    forbidden = spec.forbidden_radius_m if spec.kind == "normal_forbidden" else 0.0
    for _ in range(_MAX_REJECTION_TRIES):
        dx, dy = rng.normal(0.0, spec.sigma_m, 2)
        if math.hypot(dx, dy) < forbidden:
            continue
        candidate = Point2D(home.x + dx, home.y + dy)
        if deployment.contains(candidate):
            return candidate
    raise RuntimeError(
        f"rejection sampling failed after {_MAX_REJECTION_TRIES} tries; "
        f"forbidden radius {forbidden} m is too large for sigma {spec.sigma_m} m"
    )


def sample_population(
    spec: PopulationSpec, deployment: Deployment, seed: int
) -> list[Point2D]:
    """Draw `spec.count` true positions, one independent substream per user."""
    return [
        _sample_true_position(spec, deployment, substream(seed, STREAM_POPULATION, i))
        for i in range(spec.count)
    ]


def apply_location_error(
    true_pos: Point2D, spec: LocationErrorSpec, rng: np.random.Generator
) -> Point2D:
    """Perturb a true position into its context estimate.

    The underlying unit draw is taken before scaling, so sweeping the scale
    with the same substream perturbs every user along a paired direction;
    scale 0 returns the true position exactly.
    """
    if spec.kind == "gaussian":
        ux, uy = rng.normal(0.0, 1.0, 2)
        return Point2D(true_pos.x + spec.scale_m * ux, true_pos.y + spec.scale_m * uy)
    # disc_uniform: radius via sqrt for uniform density over the disc
    r = math.sqrt(rng.uniform(0.0, 1.0))
    theta = rng.uniform(0.0, 2.0 * math.pi)
    return Point2D(
        true_pos.x + spec.scale_m * r * math.cos(theta),
        true_pos.y + spec.scale_m * r * math.sin(theta),
    )


def drop_users(
    population: PopulationSpec,
    error: LocationErrorSpec,
    deployment: Deployment,
    seed: int,
) -> list[UserDrop]:
    """Sample the population and attach estimates and serving BSs.

    True positions depend only on (seed, population); estimates add the
    error stream. Sweeping the error scale therefore reuses identical true
    positions, and sweeping policy parameters reuses identical estimates.
    """
    users = []
    for i, true_pos in enumerate(sample_population(population, deployment, seed)):
        est = apply_location_error(true_pos, error, substream(seed, STREAM_ERROR, i))
        users.append(
            UserDrop(
                user_index=i,
                true_pos=true_pos,
                est_pos=est,
                serving_bs=deployment.nearest_bs(true_pos),
            )
        )
    return users
