"""Tests for the M(k, l) recursion and its memo table."""

from fractions import Fraction

import numpy as np
import pytest

from percmax.bounds import f_upper_max, lower_bound_value
from percmax.models import Move
from percmax.recurrence import (
    MemoTable,
    argmax_moves,
    load_table,
    max_time,
    monotonicity_check,
    save_table,
)
from percmax.utils.exceptions import GridFileError, InvalidInputError


def test_base_values(table):
    assert max_time(1, 1, table) == 0
    assert max_time(2, 1, table) == 0
    assert max_time(1, 9, table) == 1
    assert max_time(3, 3, table) == 4
    assert max_time(7, 2, table) == 9
    assert max_time(2, 7, table) == 9


def test_strip_formula_up_to_ten_thousand():
    ks = np.arange(1, 10001)
    expected = (3 * (ks - 1)) // 2
    assert all(max_time(int(k), 2) == int(v) for k, v in zip(ks[::97], expected[::97]))
    assert all(max_time(int(k), 1) == 1 for k in range(3, 10001, 101))


@pytest.mark.parametrize(
    "k, l, expected",
    [(4, 4, 9), (3, 5, 8), (3, 7, 13), (4, 7, 17), (3, 9, 18), (3, 11, 23), (4, 5, 12), (5, 5, 15), (5, 8, 26), (6, 8, 31)],
)
def test_values_match_exhaustive_search(table, k, l, expected):
    assert max_time(k, l, table) == expected
    assert max_time(l, k, table) == expected


def test_rejects_non_positive_dims(table):
    with pytest.raises(InvalidInputError):
        max_time(0, 3, table)
    with pytest.raises(InvalidInputError):
        max_time(3, -1, table)


def test_argmax_moves_at_four_by_four(table):
    choices = argmax_moves(4, 4, table)
    assert any(c.increment == 5 and c.predecessor in ((4, 2), (2, 4)) for c in choices)


def test_argmax_moves_are_consistent(table):
    for k in range(3, 41):
        for l in range(3, 41):
            if (k, l) == (3, 3):
                continue
            choices = argmax_moves(k, l, table)
            assert choices
            for choice in choices:
                assert max_time(*choice.predecessor, table) + choice.increment == max_time(k, l, table)
                assert choice.increment == choice.move.increment(k, l)


def test_argmax_moves_never_lands_moves_four_or_five_on_three(table):
    assert all(c.move is not Move.M4 for c in argmax_moves(9, 3, table))
    assert all(c.move is not Move.M5 for c in argmax_moves(3, 9, table))


def test_argmax_moves_rejects_base_dims(table):
    with pytest.raises(InvalidInputError):
        argmax_moves(3, 3, table)
    with pytest.raises(InvalidInputError):
        argmax_moves(8, 2, table)


def test_monotonicity(table):
    assert monotonicity_check(2, table)
    assert monotonicity_check(50, table)


@pytest.mark.slow
def test_monotonicity_and_sandwich_to_two_thousand():
    big = MemoTable(2000, 2000)
    assert monotonicity_check(2000, big)
    for n in range(6, 2001):
        assert lower_bound_value(n) <= max_time(n, n, big) <= f_upper_max(n)[1]


@pytest.mark.parametrize("n", [300, 600, 1200])
def test_square_growth_rate(n):
    big = MemoTable(n, n)
    ratio = Fraction(max_time(n, n, big), n * n)
    assert abs(ratio - Fraction(13, 18)) < Fraction(5, n)


def test_validate_accepts_fresh_table():
    assert MemoTable(60, 80).validate() == []


def test_lookup_grows_table():
    small = MemoTable(5, 5)
    assert small.lookup(12, 7) == small.lookup(7, 12)
    assert small.covers(7, 12)


def test_entries_are_canonical_and_ordered():
    entries = list(MemoTable(100, 100).entries())
    assert len(entries) == 5050
    keys = [(k + l, k) for k, l, _ in entries]
    assert keys == sorted(keys)
    assert all(k <= l for k, l, _ in entries)


def test_save_load_round_trip(tmp_path):
    original = MemoTable(30, 30)
    path = tmp_path / "m.csv"
    save_table(path, original)
    text = path.read_text(encoding="utf-8")
    assert text.startswith("k,ell,M\n1,1,0\n")
    assert "\r" not in text
    loaded = load_table(path)
    assert list(loaded.entries()) == list(original.entries())
    assert loaded.lookup(17, 23) == original.lookup(17, 23)


def test_empty_table_round_trip(tmp_path):
    path = tmp_path / "empty.csv"
    MemoTable().save(path)
    assert len(load_table(path)) == 0


def test_load_reports_line_of_bad_value(tmp_path):
    path = tmp_path / "bad.csv"
    MemoTable(10, 10).save(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    target = next(i for i, line in enumerate(lines) if line.startswith("4,4,"))
    lines[target] = "4,4,10"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(GridFileError) as excinfo:
        load_table(path)
    assert excinfo.value.line == target + 1


def test_load_rejects_bad_header(tmp_path):
    path = tmp_path / "header.csv"
    path.write_text("a,b,c\n1,1,0\n", encoding="utf-8")
    with pytest.raises(GridFileError) as excinfo:
        load_table(path)
    assert excinfo.value.line == 1
