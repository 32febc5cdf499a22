"""Tests for closed-form bounds and the explicit slow constructions."""

from fractions import Fraction
from itertools import product

import pytest

from percmax.bounds import (
    Cuboid,
    FractionalMove,
    GeneralizedTriple,
    best_half_move_orders,
    bounds_report,
    cuboid_construction,
    ddim_slow_set,
    diam_span_check,
    f_upper,
    f_upper_max,
    format_bounds_csv,
    fractional_dims,
    fractional_time,
    generalized_dims,
    generalized_time,
    half_move_order_total,
    half_move_pair_time,
    lower_bound_value,
    phase_plan,
    phase_times,
    rect_asymptote,
    slow_set,
    torus_slow_set,
)
from percmax.engine import CellSet, Topology, simulate
from percmax.models import Scheme
from percmax.recurrence import max_time
from percmax.schemes import scheme_dims, scheme_time
from percmax.utils.exceptions import InvalidInputError

HALF = Fraction(1, 2)
_DELTA = {4: (2, 1), 6: (0, 3), 7: (3, 0)}


# ---------------------------------------------------------------------------
# Fractional moves
# ---------------------------------------------------------------------------

def test_fractional_moves_with_unit_multiplicity_match_integer_moves():
    for s, t in product(range(3, 9), repeat=2):
        assert fractional_time(FractionalMove.of(4, 1), s, t) == s + t + 1
        assert fractional_time(FractionalMove.of(5, 1), s, t) == s + t + 1
        assert fractional_time(FractionalMove.of(6, 1), s, t) == 2 * s - 1
        assert fractional_time(FractionalMove.of(7, 1), s, t) == 2 * t - 1
        assert fractional_dims(FractionalMove.of(4, 1), s, t) == (s + 2, t + 1)


def test_fractional_moves_compose():
    x, y = Fraction(1, 2), Fraction(1, 3)
    for kind in (4, 5, 6, 7):
        s, t = Fraction(7), Fraction(9)
        first, second = FractionalMove.of(kind, x), FractionalMove.of(kind, y)
        mid = fractional_dims(first, s, t)
        split = fractional_time(first, s, t) + fractional_time(second, *mid)
        assert split == fractional_time(FractionalMove.of(kind, x + y), s, t)
        assert fractional_dims(second, *mid) == fractional_dims(FractionalMove.of(kind, x + y), s, t)


def test_two_half_moves_make_one_move():
    assert fractional_time(FractionalMove.of(4, HALF), 6, 5) + fractional_time(FractionalMove.of(4, HALF), 7, Fraction(11, 2)) == 12


@pytest.mark.parametrize("kind, x", [(3, 1), (8, 1), (4, 0), (4, -1), (4, 0.5), (4, "abc")])
def test_fractional_move_rejects_bad_input(kind, x):
    with pytest.raises(InvalidInputError):
        FractionalMove.of(kind, x)


def test_fractional_time_rejects_degenerate_rectangle():
    with pytest.raises(InvalidInputError):
        fractional_time(FractionalMove.of(6, 1), 0, 4)


def test_fractional_move_accepts_text():
    assert FractionalMove.of(7, "3/4").x == Fraction(3, 4)
    assert str(FractionalMove.of(7, "3/4")) == "(7,3/4)"


def test_generalized_triple_with_integer_tail():
    triple = GeneralizedTriple(prefix=Scheme.build(3, 2, [1]), tail=(FractionalMove.of(4, 1),))
    scheme = Scheme.build(3, 2, [1, 4])
    assert generalized_time(triple) == scheme_time(scheme) == 14
    assert generalized_dims(triple) == scheme_dims(scheme)


def test_generalized_triple_with_half_moves():
    triple = GeneralizedTriple(
        prefix=Scheme.build(3, 2, [1]),
        tail=(FractionalMove.of(4, HALF), FractionalMove.of(6, HALF)),
    )
    assert generalized_dims(triple) == (Fraction(5), Fraction(5))
    assert generalized_time(triple) == 6 + Fraction(4 + 3 + 1, 2) - Fraction(3, 8) + Fraction(2 * 5 - 1, 2)
    assert str(triple) == "(3,2,1)(4,1/2)(6,1/2)"


# ---------------------------------------------------------------------------
# Half-move pairs
# ---------------------------------------------------------------------------

def test_half_move_pair_table_matches_composition():
    for a, b in product((4, 6, 7), repeat=2):
        for k, l in product(range(10, 22), repeat=2):
            s = k - Fraction(_DELTA[a][0] + _DELTA[b][0], 2)
            t = l - Fraction(_DELTA[a][1] + _DELTA[b][1], 2)
            assert half_move_pair_time(a, b, k, l) == half_move_order_total((a, b), s, t), (a, b, k, l)


def test_half_move_pair_rejects_other_kinds():
    with pytest.raises(InvalidInputError):
        half_move_pair_time(5, 4, 10, 10)


def test_seven_four_six_is_slowest_order():
    for s, t in product(range(10, 31, 4), repeat=2):
        assert (7, 4, 6) in best_half_move_orders(s, t)


# ---------------------------------------------------------------------------
# Bounds and asymptotics
# ---------------------------------------------------------------------------

def test_lower_bound_value():
    assert lower_bound_value(12) == Fraction(251, 3)
    assert lower_bound_value(18) == Fraction(13 * 18, 1) - 28 - Fraction(5, 3)


@pytest.mark.parametrize("n", range(22, 61))
def test_upper_envelope_maximum(n):
    s_star, value = f_upper_max(n)
    assert s_star == Fraction(n + 43, 3)
    assert value == Fraction(13 * n * n, 18) + Fraction(77 * n, 18) + Fraction(1849, 72)
    assert value >= f_upper(n, s_star - 1)
    assert value >= f_upper(n, min(s_star + 1, n))


def test_upper_envelope_clamps_small_n():
    s_star, value = f_upper_max(10)
    assert s_star == 10
    assert value == f_upper(10, 10)


def test_upper_envelope_rejects_bad_s():
    with pytest.raises(InvalidInputError):
        f_upper(10, 11)
    with pytest.raises(InvalidInputError):
        f_upper(10, -1)
    with pytest.raises(InvalidInputError):
        f_upper(10, 2.5)
    with pytest.raises(InvalidInputError):
        f_upper_max(0)


def test_upper_envelope_dominates_recursion(table):
    for n in range(1, 201):
        assert max_time(n, n, table) <= f_upper_max(n)[1], n


@pytest.mark.parametrize(
    "alpha, expected",
    [(1, Fraction(13, 18)), (Fraction(1, 3), Fraction(5, 18)), (Fraction(1, 6), Fraction(11, 72)), ("1/2", Fraction(7, 18))],
)
def test_rect_asymptote(alpha, expected):
    assert rect_asymptote(alpha) == expected


@pytest.mark.parametrize("alpha", [0, Fraction(3, 2), 0.5, -1])
def test_rect_asymptote_rejects_bad_alpha(alpha):
    with pytest.raises(InvalidInputError):
        rect_asymptote(alpha)


# ---------------------------------------------------------------------------
# Slow set on the square
# ---------------------------------------------------------------------------

def test_phase_plan_twelve():
    plan = phase_plan(12)
    assert plan.s == 5
    assert plan.phase_times == (6, 5, 39, 46)
    assert plan.total == 96
    assert plan.move4_count == 3
    assert plan.move6_count == 2


def test_phase_plan_small_width():
    assert phase_plan(10).s == 1


def test_phase_plan_rejects_small_n():
    with pytest.raises(InvalidInputError):
        phase_plan(5)


@pytest.mark.parametrize("n", [6, 12, 17, 24, 31, 40])
def test_simulated_phases_match_plan(n):
    assert phase_times(n) == phase_plan(n).phase_times


def test_slow_set_twelve():
    cells = slow_set(12, verify=True)
    assert simulate(cells, Topology.box(12, 12)).total_time == 96


@pytest.mark.parametrize("n", [12, 30, 60, 120])
def test_slow_set_sandwich(n, table):
    report = simulate(slow_set(n), Topology.box(n, n))
    assert report.percolated
    assert lower_bound_value(n) <= report.total_time <= max_time(n, n, table) <= f_upper_max(n)[1]


@pytest.mark.slow
def test_slow_set_six_hundred(table):
    report = simulate(slow_set(600), Topology.box(600, 600))
    assert report.total_time == phase_plan(600).total == 259666
    assert lower_bound_value(600) <= report.total_time <= max_time(600, 600, table) <= f_upper_max(600)[1]


@pytest.mark.slow
def test_bounds_report_contiguous_sweep(table):
    rows = bounds_report(150, table=table)
    assert [row.n for row in rows] == list(range(6, 151))
    for row in rows:
        assert row.sandwiched, row.n
        assert row.slow_sim == phase_plan(row.n).total, row.n


# ---------------------------------------------------------------------------
# Torus and higher dimensions
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [6, 20, 50])
def test_torus_slow_set(n, table):
    cells = torus_slow_set(n, verify=True, table=table)
    report = simulate(cells, Topology.torus(n))
    assert report.percolated
    assert report.total_time >= max_time(n - 2, n - 2, table)


@pytest.mark.slow
def test_torus_slow_set_hundred(table):
    report = simulate(torus_slow_set(100, table=table), Topology.torus(100))
    assert report.total_time >= max_time(98, 98, table)


def test_torus_rejects_small_n():
    with pytest.raises(InvalidInputError):
        torus_slow_set(3)


def _cuboid_time(n):
    construction = cuboid_construction(n)
    report = simulate(CellSet(construction.seeds), Topology.box(n, n, n))
    assert report.percolated
    assert report.time_of(construction.last_corner) == report.total_time
    return report.total_time


def test_cuboid_construction_small():
    assert cuboid_construction(18).dims == (18, 18, 18)
    first, second = _cuboid_time(18), _cuboid_time(36)
    assert first / 18**2 < second / 36**2


@pytest.mark.slow
def test_cuboid_construction_seventy_two():
    assert _cuboid_time(72) / 72**2 >= 1.6
    assert _cuboid_time(72) / 72**2 > _cuboid_time(36) / 36**2


def test_cuboid_rejects_small_n():
    with pytest.raises(InvalidInputError):
        cuboid_construction(5)


def test_ddim_slow_set_line():
    cells = ddim_slow_set(8, 1)
    assert cells.sorted() == [(1,), (3,), (5,), (7,), (8,)]
    assert simulate(cells, Topology.box(8)).total_time == 1


def test_ddim_slow_set_dispatch():
    assert ddim_slow_set(12, 2) == slow_set(12)
    assert ddim_slow_set(18, 3).dimension == 3
    with pytest.raises(InvalidInputError):
        ddim_slow_set(12, 4)


def test_cuboid_geometry():
    a = Cuboid(origin=(1, 1, 1), sides=(2, 3, 1))
    b = Cuboid(origin=(4, 1, 3), sides=(1, 1, 2))
    assert a.far == (2, 3, 1)
    assert a.diam == 3
    assert a.distance(b) == 4
    assert a.bounding(b) == Cuboid(origin=(1, 1, 1), sides=(4, 3, 4))


def test_diam_span_check_random_pairs(rng):
    checked = 0
    while checked < 200:
        origins = rng.integers(1, 7, size=(2, 3))
        sides = rng.integers(1, 5, size=(2, 3))
        a = Cuboid(origin=tuple(int(v) for v in origins[0]), sides=tuple(int(v) for v in sides[0]))
        b = Cuboid(origin=tuple(int(v) for v in origins[1]), sides=tuple(int(v) for v in sides[1]))
        if a.distance(b) > 2:
            continue
        assert diam_span_check(a, b), (a, b)
        checked += 1


def test_diam_span_check_face_diagonal():
    a = Cuboid(origin=(1, 1, 1), sides=(1, 1, 1))
    b = Cuboid(origin=(2, 2, 1), sides=(1, 1, 1))
    assert diam_span_check(a, b)


def test_diam_span_check_rejects_non_spanning_pair():
    a = Cuboid(origin=(1, 1, 1), sides=(1, 1, 1))
    b = Cuboid(origin=(2, 2, 2), sides=(1, 1, 1))
    with pytest.raises(InvalidInputError):
        diam_span_check(a, b)


# ---------------------------------------------------------------------------
# Bounds report
# ---------------------------------------------------------------------------

def test_bounds_report(table):
    rows = bounds_report(12, table=table)
    assert [row.n for row in rows] == list(range(6, 13))
    assert rows[-1].slow_sim == 96
    assert all(row.sandwiched for row in rows)


def test_bounds_report_empty_below_six():
    assert bounds_report(5) == []
    assert format_bounds_csv([]) == "n,lower,slow_sim,M,upper\n"


def test_bounds_csv(table):
    text = format_bounds_csv(bounds_report(12, table=table))
    lines = text.splitlines()
    assert lines[0] == "n,lower,slow_sim,M,upper"
    assert len(lines) == 8
    assert lines[-1].startswith("12,251/3,96,")
