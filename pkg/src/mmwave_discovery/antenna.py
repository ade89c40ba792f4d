"""Beam-width/direction codebook and the Gaussian main-lobe gain model.

The steerable BS antenna selects a beam width from a discrete codebook and
one of N = 2*pi/width non-overlapping pointing directions. Gain follows a
Gaussian main-lobe profile: a peak term set by the solid angle of the beam
plus a quadratic roll-off in the off-boresight azimuth. Elevation is fixed
(2D scenario), so the elevation offset term is always zero and the elevation
width enters the peak gain only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import TWO_PI, angular_offset, normalize_azimuth

# Default selectable direction counts, widest beam (fewest directions) first.
DEFAULT_DIRECTION_COUNTS = (2, 3, 4, 6, 8, 12, 24, 48, 60, 72, 90, 120, 180, 360)

# Fixed elevation half-power width, radians (10 degrees).
DEFAULT_ELEVATION_WIDTH_RAD = 0.1745

# Peak gain constants: 10*log10(16*pi / (6.76 * phi_3db * theta_3db)).
_GAIN_NUMERATOR = 16.0 * math.pi
_GAIN_SHAPE = 6.76

# dB lost at an off-boresight offset of one full beam width (quadratic model).
_EDGE_LOSS_DB = 12.0

LOBE_MODELS = ("quadratic", "linear")


@dataclass(frozen=True)
class Codebook:
    """Ordered family of selectable direction counts and derived beam widths.

    `direction_counts` must be strictly increasing; beam widths 2*pi/N are
    then strictly decreasing. The elevation width is a fixed constant of the
    antenna, kept here so every gain computation sees the same value.
    """

    direction_counts: tuple[int, ...] = DEFAULT_DIRECTION_COUNTS
    elevation_width_rad: float = DEFAULT_ELEVATION_WIDTH_RAD

    def __post_init__(self) -> None:
        counts = tuple(int(n) for n in self.direction_counts)
        if not counts:
            raise ValueError("codebook needs at least one direction count")
        if any(n < 1 for n in counts):
            raise ValueError(f"direction counts must be >= 1, got {counts}")
        if any(b <= a for a, b in zip(counts, counts[1:])):
            raise ValueError(f"direction counts must be strictly increasing, got {counts}")
        if self.elevation_width_rad <= 0.0:
            raise ValueError("elevation width must be positive")
        object.__setattr__(self, "direction_counts", counts)

    @property
    def widths(self) -> tuple[float, ...]:
        """Beam widths in radians, widest first."""
        return tuple(TWO_PI / n for n in self.direction_counts)

    @property
    def widest_width(self) -> float:
        return TWO_PI / self.direction_counts[0]

    @property
    def narrowest_width(self) -> float:
        return TWO_PI / self.direction_counts[-1]

    @property
    def total_configurations(self) -> int:
        """Number of distinct (width, direction) pairs: sum of all N."""
        return sum(self.direction_counts)

    def beam_width(self, direction_count: int) -> float:
        if direction_count not in self.direction_counts:
            raise ValueError(f"direction count {direction_count} not in codebook")
        return TWO_PI / direction_count

    def count_for_width(self, width_rad: float) -> int:
        """Direction count whose beam width equals `width_rad`.

        Raises ValueError if the width is not (within float round-off of)
        a codebook width.
        """
        if width_rad <= 0.0:
            raise ValueError(f"beam width must be positive, got {width_rad}")
        n = round(TWO_PI / width_rad)
        if n in self.direction_counts and math.isclose(TWO_PI / n, width_rad, rel_tol=1e-9):
            return n
        raise ValueError(f"beam width {width_rad} rad is not in the codebook")


@dataclass(frozen=True)
class BeamConfig:
    """One antenna configuration: beam width plus boresight direction."""

    width_rad: float
    boresight_rad: float

    def __post_init__(self) -> None:
        if self.width_rad <= 0.0:
            raise ValueError(f"beam width must be positive, got {self.width_rad}")
        object.__setattr__(self, "boresight_rad", normalize_azimuth(self.boresight_rad))


def peak_gain_db(width_rad: float, elevation_width_rad: float) -> float:
    """Boresight gain in dB for a beam of the given azimuth/elevation widths.

    Strictly decreasing in both widths: halving the azimuth width buys
    exactly 10*log10(2) dB.
    """
    if width_rad <= 0.0 or elevation_width_rad <= 0.0:
        raise ValueError("beam widths must be positive")
    return 10.0 * math.log10(_GAIN_NUMERATOR / (_GAIN_SHAPE * elevation_width_rad * width_rad))


def gain_db(
    beam: BeamConfig,
    toward_rad: float,
    elevation_width_rad: float,
    lobe_model: str = "quadratic",
    floor_db: float | None = None,
) -> float:
    """Antenna gain in dB seen from direction `toward_rad`.

    The quadratic model loses 12*(offset/width)^2 dB off boresight, hitting
    exactly -3 dB at half the beam width. The linear model replaces the
    square with a plain ratio (kept for comparison; it gives -6 dB at the
    half-width). `floor_db`, when given, clamps the gain from below.
    """
    if lobe_model not in LOBE_MODELS:
        raise ValueError(f"unknown lobe model {lobe_model!r}, expected one of {LOBE_MODELS}")
    offset = angular_offset(beam.boresight_rad, toward_rad)
    ratio = offset / beam.width_rad
    if lobe_model == "quadratic":
        rolloff = _EDGE_LOSS_DB * ratio * ratio
    else:
        rolloff = _EDGE_LOSS_DB * ratio
    g = peak_gain_db(beam.width_rad, elevation_width_rad) - rolloff
    if floor_db is not None and g < floor_db:
        return floor_db
    return g


def directions_for(codebook: Codebook, width_rad: float, anchor_rad: float) -> tuple[float, ...]:
    """The N = 2*pi/width boresights {anchor + j*width}, j = 0..N-1, normalized.

    `width_rad` must be a codebook width; the grid is anchored at `anchor_rad`.
    """
    n = codebook.count_for_width(width_rad)
    step = TWO_PI / n
    return tuple(normalize_azimuth(anchor_rad + j * step) for j in range(n))
