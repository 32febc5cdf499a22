"""Exact closed forms: fractional moves, the upper envelope f_n(s) and asymptotic constants."""

from fractions import Fraction
from itertools import permutations
from typing import Any, Dict, List, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from percmax.models import Scheme
from percmax.schemes.calculus import scheme_dims, scheme_time
from percmax.utils.exceptions import InvalidInputError

Rational = Union[int, Fraction]

HALF = Fraction(1, 2)

# Growth of (width, height) per unit of x.
_FRACTIONAL_DELTAS: Dict[int, Tuple[int, int]] = {4: (2, 1), 5: (1, 2), 6: (0, 3), 7: (3, 0)}


def _as_fraction(value: Any) -> Fraction:
    if isinstance(value, float):
        raise InvalidInputError(f"Use an exact rational instead of the float {value}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise InvalidInputError(f"Not a rational number: {value!r}") from e


class FractionalMove(BaseModel):
    """Move (kind, x): kind 4-7 applied with a positive rational multiplicity."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: int = Field(..., ge=4, le=7, description="Underlying integer move")
    x: Fraction = Field(..., description="Multiplicity, a positive rational")

    @field_validator("x", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> Fraction:
        return _as_fraction(value)

    @field_validator("x")
    @classmethod
    def _positive(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError(f"multiplicity must be positive, got {value}")
        return value

    @classmethod
    def of(cls, kind: int, x: Any) -> "FractionalMove":
        """
        Create a fractional move, reporting bad input as an input-domain error.

        Raises:
            InvalidInputError: If kind is not 4-7 or x is not a positive rational
        """
        try:
            return cls(kind=kind, x=x)
        except ValidationError as e:
            raise InvalidInputError(f"Invalid fractional move ({kind},{x}): {str(e)}") from e

    def __str__(self) -> str:
        return f"({self.kind},{self.x})"


def fractional_dims(move: FractionalMove, s: Rational, t: Rational) -> Tuple[Fraction, Fraction]:
    """Dims of an s x t rectangle after the move."""
    ds, dt = _FRACTIONAL_DELTAS[move.kind]
    return Fraction(s) + ds * move.x, Fraction(t) + dt * move.x


def fractional_time(move: FractionalMove, s: Rational, t: Rational) -> Fraction:
    """
    Time taken by a fractional move applied to an s x t rectangle.

    Args:
        move: The move
        s: Width before the move
        t: Height before the move

    Returns:
        x(s+t+1) + 3(x^2-x)/2 for kinds 4 and 5, x(2s-1) for kind 6, x(2t-1) for kind 7

    Raises:
        InvalidInputError: If s or t is below 1
    """
    s, t = Fraction(s), Fraction(t)
    if s < 1 or t < 1:
        raise InvalidInputError(f"Rectangle ({s},{t}) must have both sides at least 1")
    x = move.x
    if move.kind in (4, 5):
        return x * (s + t + 1) + 3 * (x * x - x) / 2
    if move.kind == 6:
        return x * (2 * s - 1)
    return x * (2 * t - 1)


class GeneralizedTriple(BaseModel):
    """An integer scheme followed by a tail of fractional moves."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    prefix: Scheme
    tail: Tuple[FractionalMove, ...] = Field(default_factory=tuple)

    def __str__(self) -> str:
        return f"{self.prefix}" + "".join(str(m) for m in self.tail)


def _walk(triple: GeneralizedTriple) -> Tuple[Fraction, Fraction, Fraction]:
    s, t = (Fraction(v) for v in scheme_dims(triple.prefix))
    total = Fraction(scheme_time(triple.prefix))
    for move in triple.tail:
        total += fractional_time(move, s, t)
        s, t = fractional_dims(move, s, t)
    return s, t, total


def generalized_time(triple: GeneralizedTriple) -> Fraction:
    """Time of the integer prefix plus the fractional tail applied in order."""
    return _walk(triple)[2]


def generalized_dims(triple: GeneralizedTriple) -> Tuple[Fraction, Fraction]:
    """Final dims; these may be rational, and describe a box only when integral."""
    s, t, _ = _walk(triple)
    return s, t


# Consecutive half-moves (a, 1/2)(b, 1/2) ending at a k x l rectangle.
_HALF_PAIR = {
    (4, 4): lambda k, l: k + l - 2,
    (4, 6): lambda k, l: (3 * k + l) / 2 - Fraction(15, 8),
    (4, 7): lambda k, l: (k + 3 * l) / 2 - Fraction(15, 8),
    (6, 4): lambda k, l: (3 * k + l) / 2 - Fraction(17, 8),
    (6, 6): lambda k, l: 2 * k - 1,
    (6, 7): lambda k, l: k + l - Fraction(5, 2),
    (7, 4): lambda k, l: (k + 3 * l) / 2 - Fraction(13, 8),
    (7, 6): lambda k, l: k + l - Fraction(5, 2),
    (7, 7): lambda k, l: 2 * l - 1,
}


def half_move_pair_time(first: int, second: int, k: Rational, l: Rational) -> Fraction:
    """
    Time of the half-move `first` followed by the half-move `second`.

    Args:
        first: Kind of the earlier half-move (4, 6 or 7)
        second: Kind of the later half-move (4, 6 or 7)
        k: Width after both half-moves
        l: Height after both half-moves

    Returns:
        Exact time of the pair

    Raises:
        InvalidInputError: If a kind is not 4, 6 or 7
    """
    try:
        formula = _HALF_PAIR[(int(first), int(second))]
    except (KeyError, ValueError) as e:
        raise InvalidInputError(f"Half-move kinds must be 4, 6 or 7, got ({first},{second})") from e
    return Fraction(formula(Fraction(k), Fraction(l)))


def half_move_order_total(order: Sequence[int], s: Rational, t: Rational) -> Fraction:
    """Total time of the half-moves in `order`, each with x = 1/2, starting from s x t."""
    s, t = Fraction(s), Fraction(t)
    total = Fraction(0)
    for kind in order:
        move = FractionalMove.of(kind, HALF)
        total += fractional_time(move, s, t)
        s, t = fractional_dims(move, s, t)
    return total


def best_half_move_orders(s: Rational, t: Rational, kinds: Sequence[int] = (7, 4, 6)) -> List[Tuple[int, ...]]:
    """Orders of the given half-moves that attain the largest total from s x t."""
    totals = {order: half_move_order_total(order, s, t) for order in permutations(kinds)}
    best = max(totals.values())
    return sorted(order for order, value in totals.items() if value == best)


def lower_bound_value(n: int) -> Fraction:
    """13n^2/18 - 14n/9 - 5/3, the time guaranteed by the slow set on [n]^2."""
    return Fraction(13 * n * n, 18) - Fraction(14 * n, 9) - Fraction(5, 3)


def f_upper(n: int, s: Rational) -> Fraction:
    """
    Upper envelope f_n(s) = 7s + (n-s)(s+8)/2 + 3(n-s)(n-s-2)/8 + (n+s)(2n-1)/6.

    Raises:
        InvalidInputError: If s lies outside [0, n]
    """
    s = _as_fraction(s)
    if not 0 <= s <= n:
        raise InvalidInputError(f"s must lie in [0, {n}], got {s}")
    return 7 * s + (n - s) * (s + 8) / 2 + Fraction(3, 8) * (n - s) * (n - s - 2) + (n + s) * (2 * n - 1) / 6


def f_upper_max(n: int) -> Tuple[Fraction, Fraction]:
    """
    Maximum of f_n over [0, n].

    Returns:
        (s*, f_n(s*)) with s* = (n+43)/3 clamped to [0, n]

    Raises:
        InvalidInputError: If n < 1
    """
    if n < 1:
        raise InvalidInputError(f"n must be positive, got {n}")
    best = min(Fraction(n + 43, 3), Fraction(n))
    return best, f_upper(n, best)


def rect_asymptote(alpha: Any) -> Fraction:
    """
    Leading coefficient c with M(n, alpha*n) = c*n^2 + O(n).

    Raises:
        InvalidInputError: If alpha is not in (0, 1]
    """
    alpha = _as_fraction(alpha)
    if not 0 < alpha <= 1:
        raise InvalidInputError(f"alpha must lie in (0, 1], got {alpha}")
    if alpha >= Fraction(1, 3):
        return Fraction(2, 3) * alpha + Fraction(1, 18)
    return alpha - alpha * alpha / 2
