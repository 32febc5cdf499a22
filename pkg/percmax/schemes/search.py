"""Backtracking search for schemes that attain M(k, l)."""

import logging
from typing import Iterator, List, Optional, Set, Tuple

from percmax.models import Move, MoveChoice, Scheme
from percmax.recurrence import MemoTable, argmax_moves, default_table
from percmax.utils.exceptions import ConsistencyError, InvalidInputError

logger = logging.getLogger(__name__)


def _is_base(k: int, l: int) -> bool:
    return min(k, l) <= 2 or (k, l) == (3, 3)


def _admissible(choices: List[MoveChoice]) -> Iterator[MoveChoice]:
    for choice in choices:
        pk, pl = choice.predecessor
        if min(pk, pl) < 2 or (pk, pl) == (3, 3):
            continue
        yield choice


def find_scheme(k: int, l: int, table: Optional[MemoTable] = None) -> Scheme:
    """
    A scheme for the k x l box whose time equals M(k, l).

    Walks maximizing branches of the recursion down to a base with a side
    of 2, preferring the smaller move id at every step and backtracking out
    of dead ends. Bases with a side of 1 and the 3x3 base are never used
    below a target whose sides are both at least 3.

    Args:
        k: Width
        l: Height
        table: Memo table to use

    Returns:
        The scheme; for base dims it is the bare base (k, l, [])

    Raises:
        InvalidInputError: If k or l is not positive
        ConsistencyError: If no admissible chain exists
    """
    if k < 1 or l < 1:
        raise InvalidInputError(f"Dimensions must be positive, got ({k},{l})")
    if _is_base(k, l):
        return Scheme.build(k, l)

    table = table or default_table()
    table.ensure(k, l)
    dead: Set[Tuple[int, int]] = set()
    moves: List[Move] = []
    stack = [((k, l), _admissible(argmax_moves(k, l, table)))]
    while stack:
        dims, pending = stack[-1]
        for choice in pending:
            if choice.predecessor in dead:
                continue
            moves.append(choice.move)
            pk, pl = choice.predecessor
            if min(pk, pl) == 2:
                scheme = Scheme.build(pk, pl, list(reversed(moves)))
                logger.debug("Scheme for (%d,%d): %s", k, l, scheme)
                return scheme
            stack.append((choice.predecessor, _admissible(argmax_moves(pk, pl, table))))
            break
        else:
            dead.add(dims)
            stack.pop()
            if moves:
                moves.pop()
    raise ConsistencyError(f"No admissible scheme reaches ({k},{l})")
