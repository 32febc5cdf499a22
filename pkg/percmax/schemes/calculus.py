"""Dims, time sequences and normal forms of schemes."""

import logging
import re
from typing import Dict, List, Optional, Tuple

from percmax.models import Move, Scheme, TimeSeq
from percmax.recurrence import MemoTable, max_time
from percmax.schemes.moves import move_time
from percmax.utils.exceptions import ConsistencyError, InvalidInputError

logger = logging.getLogger(__name__)

_GENERAL = re.compile(r"^[123]*[4567]*$")
_SQUARE = (re.compile(r"^1*3*[4567]*$"), re.compile(r"^3*1*2*[4567]*$"))
_COMPACT = (re.compile(r"^1?3{0,2}[4567]*$"), re.compile(r"^3{0,2}1?2*[4567]*$"))


def _word(scheme: Scheme) -> str:
    return "".join(str(int(m)) for m in scheme.moves)


def scheme_dims(scheme: Scheme) -> Tuple[int, int]:
    """Dims reached after applying every move to the base."""
    k, l = scheme.s0, scheme.t0
    for move in scheme.moves:
        k += move.delta[0]
        l += move.delta[1]
    return k, l


def time_sequence(scheme: Scheme, table: Optional[MemoTable] = None) -> TimeSeq:
    """T0 = M(s0, t0), then the time of each move at the dims it reaches."""
    k, l = scheme.s0, scheme.t0
    times: List[int] = []
    for move in scheme.moves:
        k += move.delta[0]
        l += move.delta[1]
        times.append(move_time(move, k, l))
    return TimeSeq(base_time=max_time(scheme.s0, scheme.t0, table), move_times=times)


def scheme_time(scheme: Scheme, table: Optional[MemoTable] = None) -> int:
    """Total percolation time described by the scheme."""
    return time_sequence(scheme, table).total


def is_general_form(scheme: Scheme) -> bool:
    """Base with one side 2 and the other at least 3; moves [1|2|3]* then [4|5|6|7]*."""
    base_ok = (scheme.s0 >= 3 and scheme.t0 == 2) or (scheme.s0 == 2 and scheme.t0 >= 3)
    return base_ok and bool(_GENERAL.match(_word(scheme)))


def is_square_form(scheme: Scheme) -> bool:
    word = _word(scheme)
    return scheme.s0 >= 3 and scheme.t0 == 2 and any(p.match(word) for p in _SQUARE)


def is_compact_form(scheme: Scheme) -> bool:
    word = _word(scheme)
    return scheme.s0 >= 3 and scheme.t0 == 2 and any(p.match(word) for p in _COMPACT)


_TAIL_MOVES = (Move.M4, Move.M5, Move.M6, Move.M7)


def _lands_well(move: Move, k: int, l: int, first: bool) -> bool:
    if move is Move.M4 and l < 4:
        return False
    if move is Move.M5 and k < 4:
        return False
    if first and (k < 3 or l < 3 or (k, l) == (3, 3)):
        return False
    return True


def _tail_values(n: int) -> Dict[Tuple[int, int], int]:
    """Best time of a [4|5|6|7]* tail from (a, b) to (n, n)."""
    best: Dict[Tuple[int, int], int] = {(n, n): 0}
    for total in range(2 * n - 1, 1, -1):
        for a in range(max(1, total - n), min(n, total - 1) + 1):
            b = total - a
            value = None
            for move in _TAIL_MOVES:
                k, l = a + move.delta[0], b + move.delta[1]
                rest = best.get((k, l))
                if rest is None or not _lands_well(move, k, l, first=False):
                    continue
                candidate = rest + move.increment(k, l)
                if value is None or candidate > value:
                    value = candidate
            if value is not None:
                best[(a, b)] = value
    return best


def _compact_prefixes(n: int, s0: int):
    for lead in ("", "1"):
        for threes in ("", "3", "33"):
            yield lead + threes
    for threes in ("", "3", "33"):
        for lead in ("", "1"):
            word = threes + lead
            while s0 + 2 * word.count("2") <= n:
                yield word
                word += "2"


def compact_scheme(n: int, table: Optional[MemoTable] = None) -> Scheme:
    """
    Slowest scheme for the n x n box among those in compact normal form.

    Searches every base (s0, 2) and every compact prefix, completing each
    with the best [4|5|6|7]* tail found by dynamic programming.

    Args:
        n: Side of the square, at least 4

    Returns:
        The first optimal compact scheme in (s0, prefix, tail) order

    Raises:
        InvalidInputError: If n < 4
    """
    if n < 4:
        raise InvalidInputError(f"Compact schemes exist for n >= 4, got {n}")
    tails = _tail_values(n)
    best: Optional[Tuple[int, int, str, int]] = None
    seen = set()
    for s0 in range(3, n + 1):
        for word in _compact_prefixes(n, s0):
            if (s0, word) in seen:
                continue
            seen.add((s0, word))
            k, l = s0, 2
            elapsed = max_time(s0, 2, table)
            valid = True
            for i, ch in enumerate(word):
                move = Move(int(ch))
                k, l = k + move.delta[0], l + move.delta[1]
                if k > n or l > n or not _lands_well(move, k, l, first=i == 0):
                    valid = False
                    break
                elapsed += move.increment(k, l)
            if not valid:
                continue
            if word:
                rest = tails.get((k, l))
            else:
                rest = None
                for move in _TAIL_MOVES:
                    nk, nl = k + move.delta[0], l + move.delta[1]
                    after = tails.get((nk, nl))
                    if after is None or not _lands_well(move, nk, nl, first=True):
                        continue
                    candidate = after + move.increment(nk, nl)
                    rest = candidate if rest is None else max(rest, candidate)
            if rest is None:
                continue
            if best is None or elapsed + rest > best[0]:
                best = (elapsed + rest, s0, word, elapsed)

    if best is None:
        raise ConsistencyError(f"No compact scheme reaches ({n},{n})")
    total, s0, word, elapsed = best
    moves = [Move(int(ch)) for ch in word]
    k, l = scheme_dims(Scheme.build(s0, 2, moves))
    remaining = total - elapsed
    while (k, l) != (n, n):
        for move in _TAIL_MOVES:
            nk, nl = k + move.delta[0], l + move.delta[1]
            after = tails.get((nk, nl))
            if after is None or not _lands_well(move, nk, nl, first=not moves):
                continue
            step = move.increment(nk, nl)
            if after + step == remaining:
                moves.append(move)
                k, l, remaining = nk, nl, remaining - step
                break
        else:
            raise ConsistencyError(f"Lost the compact tail at ({k},{l}) for n={n}")
    scheme = Scheme.build(s0, 2, moves)
    logger.debug("Compact scheme for n=%d: %s with time %d", n, scheme, total)
    return scheme
