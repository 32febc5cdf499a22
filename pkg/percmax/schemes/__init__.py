"""Move calculus: scheme times, scheme search and perfect-set realization."""

from .moves import PAIR_TIMES, compatible, move_time, pair_relation, pair_time
from .calculus import (
    compact_scheme,
    is_compact_form,
    is_general_form,
    is_square_form,
    scheme_dims,
    scheme_time,
    time_sequence,
)
from .search import find_scheme
from .placement import PlacementState, perfect_set, place, realize_scheme

__all__ = [
    "PAIR_TIMES",
    "compatible",
    "move_time",
    "pair_relation",
    "pair_time",
    "compact_scheme",
    "is_compact_form",
    "is_general_form",
    "is_square_form",
    "scheme_dims",
    "scheme_time",
    "time_sequence",
    "find_scheme",
    "PlacementState",
    "perfect_set",
    "place",
    "realize_scheme",
]
