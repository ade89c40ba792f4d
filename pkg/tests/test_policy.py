import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mmwave_discovery.antenna import BeamConfig, Codebook
from mmwave_discovery.channel import LinkBudget, PathlossModel, boresight_range_m, calibrate_tx_power_dbm, detects
from mmwave_discovery.geometry import TWO_PI, Point2D, normalize_azimuth
from mmwave_discovery.policy import (
    InitialConfig,
    edp_sequence,
    greedy_sequence,
    initial_config,
    oracle_reachable,
    random_sequence,
)

ELEV = 0.1745
MODEL = PathlossModel()
BS = Point2D(0.0, 0.0)


def _default_budget() -> LinkBudget:
    tx = calibrate_tx_power_dbm(-84.0, 10.0, TWO_PI / 360, ELEV, 200.0)
    return LinkBudget(tx_power_dbm=tx)


def _probe_pairs(sequence) -> list[tuple[float, float]]:
    return [(p.width_rad, p.boresight_rad) for p in sequence.probes]


# ---------------------------------------------------------------- initial_config


def test_initial_config_picks_widest_width_for_near_estimates():
    book = Codebook()
    init = initial_config(_default_budget(), book, BS, Point2D(0.001, 0.0), MODEL)
    assert init.width_rad == book.widest_width
    assert init.direction_rad == 0.0


def test_initial_config_falls_back_to_narrowest_beyond_all_ranges():
    book = Codebook()
    init = initial_config(_default_budget(), book, BS, Point2D(0.0, 500.0), MODEL)
    assert init.width_rad == book.narrowest_width
    assert init.direction_rad == pytest.approx(math.pi / 2, abs=1e-12)


def test_initial_config_boundary_uses_greater_or_equal():
    book = Codebook()
    budget = _default_budget()
    width = TWO_PI / 12
    edge = boresight_range_m(budget, width, ELEV, MODEL)
    init = initial_config(budget, book, BS, Point2D(edge, 0.0), MODEL)
    assert init.width_rad == width


def test_initial_config_rejects_coincident_points():
    with pytest.raises(ValueError, match="undefined bearing"):
        initial_config(_default_budget(), Codebook(), BS, BS, MODEL)


# ---------------------------------------------------------------- random


def test_random_sequence_is_a_permutation_of_the_full_codebook():
    book = Codebook()
    seq = random_sequence(book, seed=123)
    assert seq.policy_id == "random"
    assert len(seq.probes) == 989
    assert len(set(_probe_pairs(seq))) == 989
    # directions sit on the 0-anchored grid of each width
    by_width: dict[float, set[float]] = {}
    for w, d in _probe_pairs(seq):
        by_width.setdefault(w, set()).add(d)
    for n in book.direction_counts:
        width = TWO_PI / n
        expected = {normalize_azimuth(j * width) for j in range(n)}
        assert by_width[width] == expected


def test_random_sequence_same_seed_is_identical():
    book = Codebook()
    assert random_sequence(book, seed=9).probes == random_sequence(book, seed=9).probes
    assert random_sequence(book, seed=9).probes != random_sequence(book, seed=10).probes


# ---------------------------------------------------------------- greedy


def test_greedy_hand_enumeration_two_width_codebook():
    book = Codebook(direction_counts=(4, 8))
    init = InitialConfig(width_rad=TWO_PI / 4, direction_rad=0.0)
    seq = greedy_sequence(init, book)
    w4, w8 = TWO_PI / 4, TWO_PI / 8
    expected = [(w4, 0.0), (w4, math.pi / 2), (w4, math.pi), (w4, 3 * math.pi / 2)]
    expected += [(w8, j * w8) for j in range(8)]
    got = _probe_pairs(seq)
    assert len(got) == len(expected)
    for (gw, gd), (ew, ed) in zip(got, expected):
        assert gw == pytest.approx(ew, abs=1e-15)
        assert gd == pytest.approx(ed, abs=1e-12)


def test_greedy_never_probes_wider_widths_and_counts_add_up():
    book = Codebook()
    init = InitialConfig(width_rad=TWO_PI / 24, direction_rad=1.0)
    seq = greedy_sequence(init, book)
    eligible = [n for n in book.direction_counts if n >= 24]
    assert len(seq.probes) == sum(eligible)
    assert all(p.width_rad <= init.width_rad for p in seq.probes)
    assert seq.probes[0] == BeamConfig(TWO_PI / 24, 1.0)


def test_greedy_with_narrowest_start_is_one_circular_sweep():
    book = Codebook()
    init = InitialConfig(width_rad=book.narrowest_width, direction_rad=0.5)
    seq = greedy_sequence(init, book)
    assert len(seq.probes) == 360
    assert len({p.boresight_rad for p in seq.probes}) == 360


def test_greedy_probe_wider_after_appends_the_full_codebook():
    book = Codebook()
    init = InitialConfig(width_rad=TWO_PI / 24, direction_rad=2.0)
    seq = greedy_sequence(init, book, probe_wider_after=True)
    assert len(seq.probes) == book.total_configurations
    assert len(set(_probe_pairs(seq))) == book.total_configurations
    # tail starts just wider than width*
    tail_start = sum(n for n in book.direction_counts if n >= 24)
    assert seq.probes[tail_start].width_rad == TWO_PI / 12


# ---------------------------------------------------------------- EDP


def test_edp_one_sector_explores_greedy_set_in_alternating_order():
    book = Codebook(direction_counts=(4,))
    init = InitialConfig(width_rad=TWO_PI / 4, direction_rad=0.0)
    seq = edp_sequence(init, book, sectors=1)
    # forward side first, antipode last
    expected = [0.0, math.pi / 2, 3 * math.pi / 2, math.pi]
    assert [p.boresight_rad for p in seq.probes] == pytest.approx(expected, abs=1e-12)
    assert set(_probe_pairs(seq)) == set(_probe_pairs(greedy_sequence(init, book)))


def test_edp_two_sectors_hand_enumeration():
    # codebook {4}, d* = 0, n = 2: sector arcs are half-open, so the grid
    # point at 3*pi/2 (the lower boundary of sector 0) belongs to sector 0
    # and pi/2 (its upper boundary) to sector 1.
    book = Codebook(direction_counts=(4,))
    init = InitialConfig(width_rad=TWO_PI / 4, direction_rad=0.0)
    seq = edp_sequence(init, book, sectors=2)
    expected = [0.0, 3 * math.pi / 2, math.pi, math.pi / 2]
    assert [p.boresight_rad for p in seq.probes] == pytest.approx(expected, abs=1e-12)


def test_edp_three_sectors_hand_enumeration():
    # codebook {6}, d* = 0, n = 3: hand-derived with 60-degree grid steps
    # and 120-degree sectors; each sector holds its center and its lower
    # boundary, scanned center first, forward side first.
    book = Codebook(direction_counts=(6,))
    init = InitialConfig(width_rad=TWO_PI / 6, direction_rad=0.0)
    seq = edp_sequence(init, book, sectors=3)
    deg = [round(math.degrees(p.boresight_rad)) for p in seq.probes]
    assert deg == [0, 300, 120, 60, 240, 180]


def test_edp_sector_zero_exhausts_all_widths_before_leaving():
    book = Codebook(direction_counts=(6, 12, 24))
    init = InitialConfig(width_rad=TWO_PI / 6, direction_rad=0.3)
    n = 3
    seq = edp_sequence(init, book, sectors=n)
    # first block must contain every width restricted to sector 0
    per_sector = (6 + 12 + 24) // n
    first_block = seq.probes[:per_sector]
    assert {p.width_rad for p in first_block} == {TWO_PI / 6, TWO_PI / 12, TWO_PI / 24}


def test_edp_rejects_bad_sector_count():
    init = InitialConfig(width_rad=math.pi, direction_rad=0.0)
    with pytest.raises(ValueError):
        edp_sequence(init, Codebook(), sectors=0)


counts_strategy = st.lists(
    st.integers(min_value=1, max_value=96), min_size=1, max_size=5, unique=True
).map(lambda xs: tuple(sorted(xs)))


@settings(max_examples=120, deadline=None)
@given(
    counts=counts_strategy,
    width_pick=st.integers(min_value=0, max_value=4),
    direction=st.floats(min_value=0.0, max_value=TWO_PI, exclude_max=True, allow_nan=False),
    sectors=st.integers(min_value=1, max_value=10),
    wider=st.booleans(),
)
def test_sequence_invariants(counts, width_pick, direction, sectors, wider):
    book = Codebook(direction_counts=counts)
    width_star = TWO_PI / counts[width_pick % len(counts)]
    init = InitialConfig(width_rad=width_star, direction_rad=direction)

    greedy = greedy_sequence(init, book, probe_wider_after=wider)
    edp = edp_sequence(init, book, sectors, probe_wider_after=wider)

    greedy_pairs = _probe_pairs(greedy)
    edp_pairs = _probe_pairs(edp)
    # no duplicates, identical probe sets, first probe is (width*, d*)
    assert len(set(greedy_pairs)) == len(greedy_pairs)
    assert len(set(edp_pairs)) == len(edp_pairs)
    assert set(greedy_pairs) == set(edp_pairs)
    assert greedy.probes[0] == BeamConfig(width_star, direction)
    assert edp.probes[0] == BeamConfig(width_star, direction)
    # pure functions: same inputs, same outputs
    assert greedy_sequence(init, book, probe_wider_after=wider).probes == greedy.probes
    assert edp_sequence(init, book, sectors, probe_wider_after=wider).probes == edp.probes


@settings(max_examples=60, deadline=None)
@given(counts=counts_strategy, seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_random_sequence_covers_codebook_exactly_once(counts, seed):
    book = Codebook(direction_counts=counts)
    seq = random_sequence(book, seed)
    pairs = _probe_pairs(seq)
    assert len(pairs) == book.total_configurations
    assert len(set(pairs)) == book.total_configurations


# ---------------------------------------------------------------- oracle


def test_oracle_reachable_close_user():
    reachable, best = oracle_reachable(_default_budget(), Codebook(), BS, Point2D(1.0, 0.0), MODEL)
    assert reachable
    assert best is not None
    assert detects(_default_budget(), best, BS, Point2D(1.0, 0.0), MODEL, ELEV)


def test_oracle_unreachable_beyond_max_range():
    reachable, best = oracle_reachable(_default_budget(), Codebook(), BS, Point2D(300.0, 0.0), MODEL)
    assert not reachable
    assert best is None


def test_oracle_agrees_with_random_policy_exhaustion():
    budget = _default_budget()
    book = Codebook()
    # users straddling the coverage boundary at various azimuths
    rng_points = [
        Point2D(r * math.cos(a), r * math.sin(a))
        for r, a in [
            (30.0, 0.1),
            (120.0, 2.0),
            (180.0, 4.5),
            (199.0, 0.009),
            (201.0, 0.009),
            (240.0, 1.0),
            (350.0, 3.0),
        ]
    ]
    seq = random_sequence(book, seed=55)
    for ue in rng_points:
        walked = any(detects(budget, probe, BS, ue, MODEL, ELEV) for probe in seq.probes)
        reachable, _ = oracle_reachable(budget, book, BS, ue, MODEL)
        assert walked == reachable
