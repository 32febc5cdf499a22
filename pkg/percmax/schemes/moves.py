"""Per-move and per-pair times of the move calculus."""

from typing import Callable, Dict, Iterable, List, Literal, Sequence, Tuple, Union

from percmax.models import Move
from percmax.utils.exceptions import InvalidInputError

MoveLike = Union[Move, int]
PairFormula = Callable[[int, int], int]
Relation = Literal["prohibited", "avoidable", "depends", "neutral", "preferred"]


def as_move(value: MoveLike) -> Move:
    try:
        return Move(int(value))
    except ValueError as e:
        raise InvalidInputError(f"Move ids are 1..7, got {value}") from e


def move_time(move: MoveLike, k: int, l: int) -> int:
    """
    Time contributed by a move that ends at dims (k, l).

    Args:
        move: Move id 1..7
        k: Width after the move
        l: Height after the move

    Returns:
        max(k,l)-1, l+1, k+1, k+l-2, k+l-2, 2k-1 or 2l-1 for moves 1..7

    Raises:
        InvalidInputError: If the predecessor dims are not positive
    """
    move = as_move(move)
    ds, dt = move.delta
    if k - ds < 1 or l - dt < 1:
        raise InvalidInputError(f"Move {int(move)} cannot end at ({k},{l})")
    return int(move.increment(k, l))


def _m(k: int, l: int) -> int:
    return max(k, l)


# (previous move, move) -> T_{i-1} + T_i at the dims (k, l) reached after both.
PAIR_TIMES: Dict[Tuple[int, int], PairFormula] = {
    (2, 2): lambda k, l: 2 * l + 2,
    (2, 3): lambda k, l: k + l,
    (2, 4): lambda k, l: k + 2 * l - 2,
    (2, 5): lambda k, l: k + 2 * l - 3,
    (2, 6): lambda k, l: 2 * k + l - 3,
    (2, 7): lambda k, l: 3 * l,
    (3, 2): lambda k, l: k + l,
    (3, 3): lambda k, l: 2 * k + 2,
    (3, 4): lambda k, l: 2 * k + l - 3,
    (3, 5): lambda k, l: 2 * k + l - 2,
    (3, 6): lambda k, l: 3 * k,
    (3, 7): lambda k, l: k + 2 * l - 3,
    (4, 2): lambda k, l: k + 2 * l - 3,
    (4, 3): lambda k, l: 2 * k + l - 3,
    (4, 4): lambda k, l: 2 * k + 2 * l - 7,
    (4, 5): lambda k, l: 2 * k + 2 * l - 7,
    (4, 6): lambda k, l: 3 * k + l - 6,
    (4, 7): lambda k, l: k + 3 * l - 6,
    (5, 2): lambda k, l: k + 2 * l - 3,
    (5, 3): lambda k, l: 2 * k + l - 3,
    (5, 4): lambda k, l: 2 * k + 2 * l - 7,
    (5, 5): lambda k, l: 2 * k + 2 * l - 7,
    (5, 6): lambda k, l: 3 * k + l - 6,
    (5, 7): lambda k, l: k + 3 * l - 6,
    (6, 2): lambda k, l: 2 * k + l - 4,
    (6, 3): lambda k, l: 3 * k,
    (6, 4): lambda k, l: 3 * k + l - 7,
    (6, 5): lambda k, l: 3 * k + l - 5,
    (6, 6): lambda k, l: 4 * k - 2,
    (6, 7): lambda k, l: 2 * k + 2 * l - 8,
    (7, 2): lambda k, l: 3 * l,
    (7, 3): lambda k, l: k + 2 * l - 4,
    (7, 4): lambda k, l: k + 3 * l - 5,
    (7, 5): lambda k, l: k + 3 * l - 7,
    (7, 6): lambda k, l: 2 * k + 2 * l - 8,
    (7, 7): lambda k, l: 4 * l - 2,
    # pairs involving Move 1
    (1, 1): lambda k, l: 2 * _m(k, l) - 3,
    (2, 1): lambda k, l: _m(k, l) + l - 1,
    (3, 1): lambda k, l: _m(k, l) + k - 1,
    (4, 1): lambda k, l: _m(k, l) + k + l - 5,
    (5, 1): lambda k, l: _m(k, l) + k + l - 5,
    (6, 1): lambda k, l: _m(k, l) + 2 * k - 4,
    (7, 1): lambda k, l: _m(k, l) + 2 * l - 4,
    (1, 2): lambda k, l: l + max(k - 2, l),
    (1, 3): lambda k, l: k + max(k, l - 2),
    (1, 4): lambda k, l: k + l + max(k - 2, l - 1) - 3,
    (1, 5): lambda k, l: k + l + max(k - 1, l - 2) - 3,
    (1, 6): lambda k, l: 2 * k + max(k, l - 3) - 2,
    (1, 7): lambda k, l: 2 * l + max(k - 3, l) - 2,
}


def pair_time(previous: MoveLike, move: MoveLike, k: int, l: int) -> int:
    """
    Combined time of two consecutive moves, the second ending at (k, l).

    Raises:
        InvalidInputError: If the dims before the first move are not positive
    """
    previous, move = as_move(previous), as_move(move)
    ds = previous.delta[0] + move.delta[0]
    dt = previous.delta[1] + move.delta[1]
    if k - ds < 1 or l - dt < 1:
        raise InvalidInputError(f"Moves {int(previous)}{int(move)} cannot end at ({k},{l})")
    return PAIR_TIMES[(int(previous), int(move))](k, l)


def pair_relation(first: MoveLike, second: MoveLike, dims: Iterable[Tuple[int, int]] = ()) -> Relation:
    """
    Compare using `first` then `second` against the swapped order.

    Both orders reach the same dims. The result is `prohibited` when the
    given order is always strictly slower, `avoidable` when it is never
    faster but sometimes equal, `preferred` when it is never slower and
    sometimes strictly faster, `depends` when the winner depends on the
    dims, and `neutral` when both orders always take the same time.

    Args:
        first: Earlier move
        second: Later move
        dims: Sample dims; defaults to 6 <= k, l <= 40
    """
    first, second = as_move(first), as_move(second)
    if first is second:
        return "neutral"
    samples = list(dims) or [(k, l) for k in range(6, 41) for l in range(6, 41)]
    slower = faster = equal = 0
    for k, l in samples:
        here = pair_time(first, second, k, l)
        swapped = pair_time(second, first, k, l)
        if here < swapped:
            slower += 1
        elif here > swapped:
            faster += 1
        else:
            equal += 1
    if slower and faster:
        return "depends"
    if slower:
        return "avoidable" if equal else "prohibited"
    if faster:
        return "preferred"
    return "neutral"


def compatible(first: Sequence[MoveLike], second: Sequence[MoveLike]) -> bool:
    """True if both move sequences grow the rectangle by the same amount."""

    def total(seq: Sequence[MoveLike]) -> Tuple[int, int]:
        deltas: List[Tuple[int, int]] = [as_move(m).delta for m in seq]
        return (sum(d[0] for d in deltas), sum(d[1] for d in deltas))

    return total(first) == total(second)
