"""Tests for the move calculus, scheme search and perfect-set realization."""

import pytest

import percmax.schemes.placement as placement
from percmax.engine import Topology, simulate
from percmax.models import Move, Scheme
from percmax.recurrence import max_time
from percmax.schemes import (
    compact_scheme,
    compatible,
    find_scheme,
    is_compact_form,
    is_general_form,
    is_square_form,
    move_time,
    pair_relation,
    pair_time,
    perfect_set,
    place,
    realize_scheme,
    scheme_dims,
    scheme_time,
    time_sequence,
)
from percmax.utils.exceptions import ConsistencyError, GridFileError, InvalidInputError


def S(s0, t0, word=""):
    return Scheme.build(s0, t0, [int(ch) for ch in word])


def _parse(text):
    s0, t0, word = text.split(",")
    return S(int(s0), int(t0), word)


# ---------------------------------------------------------------------------
# Per-move and per-pair times
# ---------------------------------------------------------------------------

def test_move_time_examples():
    assert move_time(4, 8, 4) == 10
    assert move_time(1, 3, 8) == 7
    assert move_time(6, 12, 9) == 23
    assert move_time(Move.M2, 5, 4) == 5
    assert move_time(7, 9, 4) == 7


def test_move_time_rejects_underflow():
    with pytest.raises(InvalidInputError):
        move_time(6, 5, 3)
    with pytest.raises(InvalidInputError):
        move_time(8, 5, 5)


def test_pair_time_examples():
    assert pair_time(6, 4, 10, 9) == 3 * 10 + 9 - 7
    assert pair_time(7, 1, 10, 9) == 10 + 2 * 9 - 4
    assert pair_time(1, 2, 9, 5) == 5 + max(9 - 2, 5)
    assert pair_time(1, 3, 5, 9) == 5 + max(5, 9 - 2)


def test_pair_time_is_sum_of_move_times():
    for a in Move:
        for b in Move:
            ds, dt = a.delta[0] + b.delta[0], a.delta[1] + b.delta[1]
            for k in range(4, 13):
                for l in range(4, 13):
                    if k - ds < 1 or l - dt < 1:
                        with pytest.raises(InvalidInputError):
                            pair_time(a, b, k, l)
                        continue
                    mid = (k - b.delta[0], l - b.delta[1])
                    assert pair_time(a, b, k, l) == move_time(b, k, l) + move_time(a, *mid), (a, b, k, l)


@pytest.mark.parametrize("first, second", [(5, 3), (4, 2), (7, 3), (6, 2), (4, 7), (7, 5), (5, 6), (6, 4)])
def test_prohibited_pairs(first, second):
    assert pair_relation(first, second) == "prohibited"
    assert pair_relation(second, first) == "preferred"


@pytest.mark.parametrize("first, second", [(4, 1), (5, 1)])
def test_avoidable_pairs(first, second):
    assert pair_relation(first, second) == "avoidable"


@pytest.mark.parametrize("first, second", [(2, 1), (1, 3), (1, 6), (1, 7)])
def test_order_dependent_pairs(first, second):
    assert pair_relation(first, second) == "depends"
    assert pair_relation(second, first) == "depends"


def test_neutral_pair():
    assert pair_relation(2, 3) == "neutral"
    assert pair_relation(4, 4) == "neutral"


def test_compatible():
    assert compatible([6, 1], [3, 5])
    assert compatible([1, 1, 1], [4, 5])
    assert not compatible([1, 2], [1, 3])


# ---------------------------------------------------------------------------
# Schemes
# ---------------------------------------------------------------------------

def test_scheme_validation():
    with pytest.raises(InvalidInputError):
        S(4, 4)
    with pytest.raises(InvalidInputError):
        S(3, 2, "2")
    with pytest.raises(InvalidInputError):
        S(2, 2, "1")
    assert S(3, 3).moves == ()


def test_scheme_text_round_trip():
    scheme = Scheme.from_text("2 7 : 1")
    assert scheme == S(2, 7, "1")
    assert scheme.to_text() == "2 7 : 1"
    assert Scheme.from_text(S(4, 2, "3311").to_text()) == S(4, 2, "3311")
    assert str(S(4, 2, "3311")) == "(4,2,3311)"
    assert S(3, 3).to_text() == "3 3 :"
    assert Scheme.from_text("3 3 :") == S(3, 3)


@pytest.mark.parametrize("text", ["2 7 1", "2 : 1", "a 7 : 1", "2 7 : 9"])
def test_scheme_text_rejects_malformed(text):
    with pytest.raises(GridFileError):
        Scheme.from_text(text)


def test_scheme_dims():
    assert scheme_dims(S(2, 7, "1")) == (3, 8)
    assert scheme_dims(S(3, 2)) == (3, 2)
    assert scheme_dims(S(4, 2, "3311")) == (6, 8)


@pytest.mark.parametrize(
    "slower, faster, t_slow, t_fast",
    [
        ("3,2,333", "2,7,1", 15, 16),
        ("3,2,1333", "2,9,2", 21, 22),
        ("4,2,333", "2,5,15", 19, 21),
        ("3,2,11", "5,2,3", 10, 12),
        ("3,2,311", "2,5,12", 16, 18),
        ("3,2,3311", "2,3,155", 24, 25),
        ("4,2,3311", "2,7,17", 27, 31),
    ],
)
def test_normal_form_comparisons(slower, faster, t_slow, t_fast):
    a, b = _parse(slower), _parse(faster)
    assert scheme_time(a) == t_slow
    assert scheme_time(b) == t_fast
    assert scheme_dims(a) == scheme_dims(b)


def test_time_sequence():
    sequence = time_sequence(S(3, 2, "3311"))
    assert sequence.base_time == 3
    assert sequence.move_times == [4, 4, 6, 7]
    assert sequence.cumulative == [3, 7, 11, 17, 24]
    assert sequence.total == 24


def test_normal_form_validators():
    assert is_general_form(S(3, 2, "1347"))
    assert is_general_form(S(2, 5, "12"))
    assert not is_general_form(S(3, 2, "141"))
    assert is_square_form(S(3, 2, "1133"))
    assert is_square_form(S(4, 2, "3312"))
    assert not is_square_form(S(2, 5, "1"))
    assert is_compact_form(S(5, 2, "1334"))
    assert is_compact_form(S(3, 2, "33122"))
    assert not is_compact_form(S(3, 2, "333"))


@pytest.mark.parametrize("n", list(range(4, 31)))
def test_compact_scheme_is_optimal(n):
    scheme = compact_scheme(n)
    assert is_compact_form(scheme)
    assert scheme_dims(scheme) == (n, n)
    assert scheme_time(scheme) == max_time(n, n)


def test_compact_scheme_needs_four():
    with pytest.raises(InvalidInputError):
        compact_scheme(3)


# ---------------------------------------------------------------------------
# Scheme search
# ---------------------------------------------------------------------------

def test_find_scheme_on_strips():
    for k in range(1, 30):
        scheme = find_scheme(k, 2)
        assert scheme == S(k, 2)
        assert scheme_time(scheme) == (3 * (k - 1)) // 2


def test_find_scheme_five_by_four():
    scheme = find_scheme(5, 4)
    assert scheme_dims(scheme) == (5, 4)
    assert scheme_time(scheme) == 12 == max_time(5, 4)


def test_find_scheme_is_exact_and_avoids_excluded_bases(table):
    for k in range(3, 41):
        for l in range(3, 41):
            scheme = find_scheme(k, l, table)
            assert scheme_dims(scheme) == (k, l)
            assert scheme_time(scheme, table) == max_time(k, l, table)
            if (k, l) != (3, 3):
                assert min(scheme.s0, scheme.t0) == 2


def test_find_scheme_rejects_bad_dims():
    with pytest.raises(InvalidInputError):
        find_scheme(0, 4)


# ---------------------------------------------------------------------------
# Realization
# ---------------------------------------------------------------------------

def test_realize_even_strip():
    cells = realize_scheme(S(6, 2))
    assert cells.sorted() == [(1, 1), (4, 1), (2, 2), (6, 2)]
    assert simulate(cells, Topology.box(6, 2)).total_time == 7


def test_realize_move_one_and_move_three():
    assert simulate(realize_scheme(S(3, 2, "1")), Topology.box(4, 3)).total_time == 6
    assert simulate(realize_scheme(S(5, 2, "3")), Topology.box(5, 4)).total_time == 12


def test_realize_checks_every_prefix():
    cells = realize_scheme(S(4, 2, "3311"), check_prefixes=True)
    assert simulate(cells, Topology.box(6, 8)).total_time == 27


@pytest.fixture
def stage_calls(monkeypatch):
    calls = []
    real = placement.simulate

    def counting(cells, topology, trace=False):
        calls.append(topology.dims)
        return real(cells, topology, trace)

    monkeypatch.setattr(placement, "simulate", counting)
    return calls


def test_small_targets_check_every_prefix_by_default(stage_calls):
    realize_scheme(S(4, 2, "3311"))
    assert stage_calls == [(4, 2), (4, 4), (4, 6), (5, 7), (6, 8)]


def test_large_targets_check_only_the_final_box(stage_calls):
    scheme = find_scheme(30, 30)
    realize_scheme(scheme)
    assert stage_calls == [(30, 30)]
    stage_calls.clear()
    realize_scheme(scheme, verify=False)
    assert stage_calls == []


def test_realize_rejects_a_gated_move():
    # Move 4 onto a height-3 box fills faster than its formula
    with pytest.raises(ConsistencyError):
        realize_scheme(S(3, 2, "4"))


def test_realize_with_anchor():
    cells = realize_scheme(S(3, 2, "1"), anchor=(3, 5))
    assert cells.bounding_box[0][0] >= 3 and cells.bounding_box[0][1] >= 5


def test_perfect_three_by_three():
    cells = perfect_set(3, 3)
    assert simulate(cells, Topology.box(3, 3)).total_time == 4


def _check_perfect(k, l):
    scheme = find_scheme(k, l)
    state = place(scheme.s0, scheme.t0, scheme.moves)
    report = simulate(state.cellset(), Topology.box(k, l))
    assert report.total_time == max_time(k, l), (k, l)
    assert any(report.time_of(c) == report.total_time for c in Topology.box(k, l).corners())
    assert any(report.time_of(c) == report.total_time for c in state.corners)
    base = time_sequence(scheme).base_time
    assert all(count <= 2 for count in report.step_counts[base:]), (k, l)
    return scheme, report


def test_perfect_sets_small():
    for k in range(3, 21):
        for l in range(3, 21):
            if (k, l) != (3, 3):
                _check_perfect(k, l)


@pytest.mark.slow
def test_perfect_sets_up_to_sixty():
    for k in range(3, 61):
        for l in range(3, 61):
            if (k, l) != (3, 3):
                _check_perfect(k, l)


def test_move_one_segments_end_with_single_infections():
    for k in range(3, 31):
        for l in range(3, 31):
            if (k, l) == (3, 3):
                continue
            scheme, report = _check_perfect(k, l)
            a, b = scheme.s0, scheme.t0
            elapsed = time_sequence(scheme).base_time
            for move in scheme.moves:
                na, nb = a + move.delta[0], b + move.delta[1]
                after = elapsed + move_time(move, na, nb)
                if move is Move.M1:
                    window = report.step_counts[elapsed:after]
                    gap = abs(a - b)
                    assert window.count(1) == gap, (k, l)
                    assert all(c == 1 for c in window[len(window) - gap:]), (k, l)
                a, b, elapsed = na, nb, after


def test_perfect_set_thirty():
    cells = perfect_set(30, 30)
    assert len(cells) == 38
    assert simulate(cells, Topology.box(30, 30)).total_time == max_time(30, 30)


@pytest.mark.slow
def test_perfect_set_size_for_thousand():
    cells = perfect_set(1000, 1000, verify=False)
    assert 1270 <= len(cells) <= 1286


def test_moves_two_and_three_start_and_end_with_single_infections():
    checked = 0
    for k in range(3, 31):
        for l in range(3, 31):
            if (k, l) == (3, 3):
                continue
            scheme, report = _check_perfect(k, l)
            a, b = scheme.s0, scheme.t0
            elapsed = time_sequence(scheme).base_time
            for move in scheme.moves:
                a, b = a + move.delta[0], b + move.delta[1]
                after = elapsed + move_time(move, a, b)
                if move in (Move.M2, Move.M3):
                    counts = report.step_counts
                    assert counts[elapsed] == counts[elapsed + 1] == counts[after - 1] == 1, (k, l)
                    checked += 1
                elapsed = after
    assert checked > 0
