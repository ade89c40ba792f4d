"""The three discovery algorithms as deterministic probe sequences.

Each policy turns context (or its absence) into an ordered list of
(beam width, boresight) probes with no repeats:

* random: a uniform permutation of every codebook configuration.
* greedy: start at the context-derived (width*, d*), sweep the full circle
  at that width, then restart the sweep at each narrower width.
* enhanced (EDP): partition the circle into n sectors centered on d*,
  exhaust all widths inside the sector pointing at the estimate first
  (alternating sides around the sector anchor), then repeat per sector,
  alternating sides around the first sector.

Sweep orientation: a "forward" step adds one grid step to the azimuth; the
side alternation tries the forward side first. Probe orders are computed in
integer grid coordinates so sector membership and side ordering are exact,
and greedy/EDP emit bit-identical (width, boresight) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .antenna import BeamConfig, Codebook, directions_for
from .channel import LinkBudget, PathlossModel, boresight_range_m, received_power_dbm
from .geometry import TWO_PI, Point2D, azimuth_to, normalize_azimuth


@dataclass(frozen=True)
class InitialConfig:
    """Context-derived starting configuration (width*, d*)."""

    width_rad: float
    direction_rad: float

    def __post_init__(self) -> None:
        if self.width_rad <= 0.0:
            raise ValueError(f"beam width must be positive, got {self.width_rad}")
        object.__setattr__(self, "direction_rad", normalize_azimuth(self.direction_rad))


@dataclass(frozen=True)
class ProbeSequence:
    """An ordered, duplicate-free list of probes plus the policy that built it."""

    probes: tuple[BeamConfig, ...]
    policy_id: str
    edp_sectors: int | None = None
    seed: int | None = None


def initial_config(
    budget: LinkBudget,
    codebook: Codebook,
    bs: Point2D,
    est: Point2D,
    pathloss_model: PathlossModel = PathlossModel(),
) -> InitialConfig:
    """Aim at the estimated position with the widest beam that can reach it.

    Falls back to the narrowest width (best effort) when the estimate lies
    beyond every beam's boresight range.
    """
    direction = azimuth_to(bs, est)  # raises on coincident points
    distance = bs.distance_to(est)
    for count in codebook.direction_counts:
        width = TWO_PI / count
        if boresight_range_m(budget, width, codebook.elevation_width_rad, pathloss_model) >= distance:
            return InitialConfig(width, direction)
    return InitialConfig(codebook.narrowest_width, direction)


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_sequence(codebook: Codebook, seed) -> ProbeSequence:
    """Uniformly random permutation of all (width, direction) pairs.

    Directions sit on the 0-anchored grid of each width; every pair appears
    exactly once, so an undetected user after the full walk is unreachable.
    """
    rng = _as_rng(seed)
    pairs = [
        BeamConfig(TWO_PI / count, direction)
        for count in codebook.direction_counts
        for direction in directions_for(codebook, TWO_PI / count, 0.0)
    ]
    order = rng.permutation(len(pairs))
    seed_note = None if isinstance(seed, np.random.Generator) else seed
    return ProbeSequence(
        probes=tuple(pairs[i] for i in order),
        policy_id="random",
        seed=seed_note,
    )


def _eligible_counts(codebook: Codebook, width_star_rad: float) -> list[int]:
    """Counts whose width is <= width*, widest first."""
    n_star = codebook.count_for_width(width_star_rad)
    return [n for n in codebook.direction_counts if n >= n_star]


def _wider_counts(codebook: Codebook, width_star_rad: float) -> list[int]:
    """Counts wider than width*, ordered from just-wider to widest.

    Used by the optional wider-width tail for users that turn out closer
    than estimated.
    """
    n_star = codebook.count_for_width(width_star_rad)
    return [n for n in reversed(codebook.direction_counts) if n < n_star]


def _grid_beam(direction_rad: float, count: int, step_index: int) -> BeamConfig:
    width = TWO_PI / count
    return BeamConfig(width, normalize_azimuth(direction_rad + step_index * width))


def _full_sweep(direction_rad: float, counts: list[int]) -> list[BeamConfig]:
    """Forward circular sweep of each count's grid anchored at `direction_rad`."""
    return [_grid_beam(direction_rad, n, j) for n in counts for j in range(n)]


def greedy_sequence(
    init: InitialConfig, codebook: Codebook, probe_wider_after: bool = False
) -> ProbeSequence:
    """Circular sweeps anchored at d*, one width at a time, narrowing on miss.

    Probe 1 is (width*, d*); the sweep then covers the remaining directions
    of that width in forward order and restarts at d* for each narrower
    width. Widths wider than width* are only probed when
    `probe_wider_after` is set, appended after the normal sequence.
    """
    probes = _full_sweep(init.direction_rad, _eligible_counts(codebook, init.width_rad))
    if probe_wider_after:
        probes += _full_sweep(init.direction_rad, _wider_counts(codebook, init.width_rad))
    return ProbeSequence(probes=tuple(probes), policy_id="greedy")


def _sector_visit_order(sectors: int) -> list[int]:
    """Sector indices in visit order: 0, then +1, -1, +2, -2, ... without repeats."""
    order = [0]
    k = 1
    while len(order) < sectors:
        for j in (k, -k):
            idx = j % sectors
            if idx not in order:
                order.append(idx)
        k += 1
    return order


def _sector_members(count: int, sectors: int, sector_idx: int) -> list[int]:
    """Grid step indices inside one sector, alternation order around its anchor.

    Works on integer offsets scaled by 2*sectors*count (exact turns), so
    membership in the half-open sector arcs and the forward-side-first tie
    break are exact. The sector anchor is d* rotated by sector_idx/sectors
    of a turn; members are sorted by distance from that anchor, forward side
    first at ties.
    """
    modulus = 2 * sectors * count
    half = sectors * count
    members = []
    for m in range(count):
        q = (2 * sectors * m - 2 * count * sector_idx + half) % modulus - half
        if -count <= q < count:  # inside [anchor - 1/(2n), anchor + 1/(2n)) turns
            members.append((abs(q), q < 0, m))
    members.sort()
    return [m for _, _, m in members]


def edp_sequence(
    init: InitialConfig,
    codebook: Codebook,
    sectors: int,
    probe_wider_after: bool = False,
) -> ProbeSequence:
    """Sector-by-sector search around d*, exhausting all widths per sector.

    Sector 0 is centered on d*; within a sector each eligible width (width*
    down to the narrowest) is scanned around the sector anchor, alternating
    forward/backward sides, before the beam narrows. Sectors are visited
    0, +1, -1, +2, -2, ... With one sector this explores exactly the greedy
    probe set in alternating order.
    """
    if sectors < 1:
        raise ValueError(f"sector count must be >= 1, got {sectors}")
    counts = _eligible_counts(codebook, init.width_rad)
    probes = []
    for sector_idx in _sector_visit_order(sectors):
        for count in counts:
            for m in _sector_members(count, sectors, sector_idx):
                probes.append(_grid_beam(init.direction_rad, count, m))
    if probe_wider_after:
        probes += _full_sweep(init.direction_rad, _wider_counts(codebook, init.width_rad))
    return ProbeSequence(probes=tuple(probes), policy_id="edp", edp_sectors=sectors)


def oracle_reachable(
    budget: LinkBudget,
    codebook: Codebook,
    bs: Point2D,
    ue_true: Point2D,
    pathloss_model: PathlossModel = PathlossModel(),
    lobe_model: str = "quadratic",
    gain_floor_db: float | None = None,
) -> tuple[bool, BeamConfig | None]:
    """Brute-force reachability over every codebook configuration.

    Returns whether any (width, direction) pair on the 0-anchored grids
    detects the user, plus the detecting configuration with maximal
    received power. Independent of the policy modules' probe orders.
    """
    threshold = budget.detection_threshold_dbm
    best_beam = None
    best_rx = -float("inf")
    for count in codebook.direction_counts:
        width = TWO_PI / count
        for direction in directions_for(codebook, width, 0.0):
            beam = BeamConfig(width, direction)
            rx = received_power_dbm(
                budget,
                beam,
                bs,
                ue_true,
                pathloss_model,
                codebook.elevation_width_rad,
                lobe_model,
                gain_floor_db,
            )
            if rx >= threshold and rx > best_rx:
                best_rx = rx
                best_beam = beam
    return best_beam is not None, best_beam
