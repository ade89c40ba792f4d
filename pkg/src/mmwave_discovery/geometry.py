"""2D positions, azimuth arithmetic on the circle, and sector membership.

Angles are plain floats in radians, always normalized to [0, 2*pi).
Azimuth 0 points along the positive x axis and grows toward the positive
y axis (atan2 convention). Degrees appear only at the CLI/report boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi


def normalize_azimuth(angle_rad: float) -> float:
    """Wrap an angle to [0, 2*pi). Idempotent."""
    a = math.fmod(angle_rad, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    if a >= TWO_PI:  # fmod of a tiny negative can round up to 2*pi
        a = 0.0
    return a


@dataclass(frozen=True)
class Point2D:
    """A position in the scenario plane, coordinates in meters."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"coordinates must be finite, got ({self.x}, {self.y})")

    def distance_to(self, other: "Point2D") -> float:
        return math.hypot(other.x - self.x, other.y - self.y)


def azimuth_to(origin: Point2D, target: Point2D) -> float:
    """Bearing from `origin` to `target` in [0, 2*pi).

    Raises ValueError for coincident points (undefined bearing).
    """
    dx = target.x - origin.x
    dy = target.y - origin.y
    if dx == 0.0 and dy == 0.0:
        raise ValueError("undefined bearing: origin and target coincide")
    return normalize_azimuth(math.atan2(dy, dx))


def angular_offset(a: float, b: float) -> float:
    """Smallest absolute angle between two azimuths, in [0, pi]. Symmetric."""
    d = abs(normalize_azimuth(a) - normalize_azimuth(b))
    return min(d, TWO_PI - d)


def signed_offset(frm: float, to: float) -> float:
    """Signed rotation taking `frm` to `to`, in (-pi, pi]."""
    d = normalize_azimuth(to - frm)
    return d if d <= math.pi else d - TWO_PI


@dataclass(frozen=True)
class Sector:
    """One slice of an n-way partition of the circle.

    Covers the half-open arc [center - width/2, center + width/2): an angle
    exactly on a boundary belongs to the sector whose arc starts there.
    """

    center: float
    width: float

    def __post_init__(self) -> None:
        if not 0.0 < self.width <= TWO_PI:
            raise ValueError(f"sector width must be in (0, 2*pi], got {self.width}")
        object.__setattr__(self, "center", normalize_azimuth(self.center))

    def contains(self, angle: float) -> bool:
        if self.width == TWO_PI:
            return True
        return normalize_azimuth(angle - self.center + self.width / 2.0) < self.width


def sector_of(partition_n: int, anchor: float, angle: float) -> int:
    """Index in [0, n) of the sector containing `angle`.

    The partition has `partition_n` equal sectors, sector 0 centered on
    `anchor`, indices growing with azimuth. Boundary angles go to the sector
    whose half-open arc starts there (see Sector).
    """
    if partition_n < 1:
        raise ValueError(f"partition_n must be >= 1, got {partition_n}")
    if partition_n == 1:
        return 0
    width = TWO_PI / partition_n
    delta = normalize_azimuth(angle - anchor + width / 2.0)
    return min(int(delta // width), partition_n - 1)


def sector_center(partition_n: int, anchor: float, index: int) -> float:
    """Center azimuth of sector `index` in the partition anchored at `anchor`."""
    if partition_n < 1:
        raise ValueError(f"partition_n must be >= 1, got {partition_n}")
    return normalize_azimuth(anchor + index * (TWO_PI / partition_n))
