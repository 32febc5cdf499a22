"""Data models for percmax."""

from enum import Enum, IntEnum
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from percmax.utils.exceptions import GridFileError, InvalidInputError

Cell = Tuple[int, ...]


class Never(Enum):
    """Infection time of a cell that is never infected."""

    NEVER = "never"

    def __repr__(self) -> str:
        return "NEVER"


NEVER = Never.NEVER

Time = Union[int, Never]


def _larger(a: Any, b: Any) -> Any:
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.maximum(a, b)
    return max(a, b)


class Move(IntEnum):
    """The seven admissible rectangle growth steps, identified by their number."""

    M1 = 1
    M2 = 2
    M3 = 3
    M4 = 4
    M5 = 5
    M6 = 6
    M7 = 7

    @property
    def delta(self) -> Tuple[int, int]:
        """Growth (ds, dt) of the rectangle's width and height."""
        return _DELTAS[self]

    def increment(self, k: Any, l: Any) -> Any:
        """
        Time added by this move when it ends at dims (k, l).

        Works elementwise on numpy arrays as well as on integers.

        Args:
            k: Width after the move
            l: Height after the move

        Returns:
            The move's contribution to the percolation time
        """
        if self is Move.M1:
            return _larger(k, l) - 1
        if self is Move.M2:
            return l + 1
        if self is Move.M3:
            return k + 1
        if self in (Move.M4, Move.M5):
            return k + l - 2
        if self is Move.M6:
            return 2 * k - 1
        return 2 * l - 1


_DELTAS: Dict[Move, Tuple[int, int]] = {
    Move.M1: (1, 1),
    Move.M2: (2, 0),
    Move.M3: (0, 2),
    Move.M4: (2, 1),
    Move.M5: (1, 2),
    Move.M6: (0, 3),
    Move.M7: (3, 0),
}


class Rect(BaseModel):
    """Axis-aligned rectangle of cells [x0, x0+width) x [y0, y0+height)."""

    model_config = ConfigDict(frozen=True)

    origin: Tuple[int, int] = Field((1, 1), description="Lower-left cell")
    width: int = Field(..., ge=1, description="Extent along x")
    height: int = Field(..., ge=1, description="Extent along y")

    @property
    def sides(self) -> Tuple[int, int]:
        return (self.width, self.height)

    @property
    def far(self) -> Tuple[int, int]:
        """Upper-right cell."""
        return (self.origin[0] + self.width - 1, self.origin[1] + self.height - 1)

    @property
    def semi_perimeter(self) -> int:
        return self.width + self.height

    def cells(self) -> List[Cell]:
        x0, y0 = self.origin
        return [(x0 + i, y0 + j) for j in range(self.height) for i in range(self.width)]

    def corners(self) -> List[Cell]:
        (x0, y0), (x1, y1) = self.origin, self.far
        return [(x0, y0), (x1, y0), (x0, y1), (x1, y1)]

    def contains(self, cell: Sequence[int]) -> bool:
        (x0, y0), (x1, y1) = self.origin, self.far
        return x0 <= cell[0] <= x1 and y0 <= cell[1] <= y1

    def distance(self, other: "Rect") -> int:
        """l1 distance between the closest cells of the two rectangles."""
        gap = 0
        for lo1, hi1, lo2, hi2 in zip(self.origin, self.far, other.origin, other.far):
            gap += max(0, lo2 - hi1, lo1 - hi2)
        return gap

    def bounding(self, other: "Rect") -> "Rect":
        lo = tuple(min(a, b) for a, b in zip(self.origin, other.origin))
        hi = tuple(max(a, b) for a, b in zip(self.far, other.far))
        return Rect(origin=lo, width=hi[0] - lo[0] + 1, height=hi[1] - lo[1] + 1)

    def translate(self, dx: int, dy: int) -> "Rect":
        return Rect(origin=(self.origin[0] + dx, self.origin[1] + dy), width=self.width, height=self.height)


class InfectionReport(BaseModel):
    """Outcome of running the process from an initial set to its fixed point."""

    dims: Tuple[int, ...] = Field(..., description="Grid dimensions")
    topology: Literal["box", "torus"] = Field("box", description="Grid kind")
    threshold: int = Field(2, ge=1, description="Infected neighbours needed")
    initial: List[Cell] = Field(default_factory=list, description="Initial cells, row-major")
    times: List[int] = Field(..., description="Row-major infection times, -1 for never")
    total_time: Time = Field(..., description="Percolation time or never")
    percolated: bool
    step_counts: List[int] = Field(default_factory=list, description="New infections per step")
    frontiers: Optional[List[List[Cell]]] = Field(None, description="Cells infected at each step")

    @model_validator(mode="after")
    def _check_invariants(self) -> "InfectionReport":
        size = int(np.prod(self.dims))
        if len(self.times) != size:
            raise ValueError(f"times has {len(self.times)} entries for {size} cells")
        never_count = self.times.count(-1)
        if self.percolated != (never_count == 0) or self.percolated != (self.total_time is not NEVER):
            raise ValueError("percolated, NEVER cells and total_time disagree")
        if self.percolated and self.total_time != max(self.times):
            raise ValueError("total_time must be the largest infection time")
        if sum(self.step_counts) + len(self.initial) != size - never_count:
            raise ValueError("step counts do not account for every infected cell")
        return self

    def index(self, cell: Sequence[int]) -> int:
        stride, idx = 1, 0
        for coord, extent in zip(cell, self.dims):
            idx += (coord - 1) * stride
            stride *= extent
        return idx

    def time_of(self, cell: Sequence[int]) -> Time:
        value = self.times[self.index(cell)]
        return NEVER if value < 0 else value

    @property
    def last_time(self) -> int:
        """Largest finite infection time, whether or not the grid percolated."""
        return max(self.times) if self.times else 0

    @property
    def infected_count(self) -> int:
        return len(self.times) - self.times.count(-1)


class MoveChoice(BaseModel):
    """A maximizing branch of the recursion at some dims."""

    move: Move
    predecessor: Tuple[int, int]
    increment: int = Field(..., ge=1)


class Scheme(BaseModel):
    """A base rectangle (s0, t0) followed by a sequence of moves."""

    model_config = ConfigDict(frozen=True)

    s0: int = Field(..., ge=1, description="Base width")
    t0: int = Field(..., ge=1, description="Base height")
    moves: Tuple[Move, ...] = Field(default_factory=tuple)

    @model_validator(mode="after")
    def _check_base(self) -> "Scheme":
        if not (self.s0 <= 2 or self.t0 <= 2 or (self.s0, self.t0) == (3, 3)):
            raise ValueError(f"base ({self.s0},{self.t0}) needs a side of at most 2 or must be (3,3)")
        if self.moves:
            ds, dt = self.moves[0].delta
            s1, t1 = self.s0 + ds, self.t0 + dt
            if s1 < 3 or t1 < 3 or (s1, t1) == (3, 3):
                raise ValueError(f"first move leads to ({s1},{t1}); both sides must be at least 3 and not (3,3)")
        return self

    @classmethod
    def build(cls, s0: int, t0: int, moves: Sequence[int] = ()) -> "Scheme":
        """
        Create a scheme, reporting violations as input-domain errors.

        Raises:
            InvalidInputError: If the base or the move list is not admissible
        """
        try:
            return cls(s0=s0, t0=t0, moves=tuple(Move(int(m)) for m in moves))
        except (ValidationError, ValueError) as e:
            raise InvalidInputError(f"Invalid scheme ({s0},{t0},{''.join(str(int(m)) for m in moves)}): {str(e)}") from e

    def to_text(self) -> str:
        return " ".join([str(self.s0), str(self.t0), ":", *(str(int(m)) for m in self.moves)])

    @classmethod
    def from_text(cls, text: str) -> "Scheme":
        """Parse the `s0 t0 : m1 m2 ... mr` form."""
        head, sep, tail = text.strip().partition(":")
        parts = head.split()
        if not sep or len(parts) != 2:
            raise GridFileError(f"expected 's0 t0 : moves', got {text.strip()!r}")
        try:
            s0, t0 = int(parts[0]), int(parts[1])
            moves = [int(tok) for tok in tail.split()]
        except ValueError as e:
            raise GridFileError(f"non-integer token in scheme {text.strip()!r}") from e
        if any(m < 1 or m > 7 for m in moves):
            raise GridFileError(f"move ids must lie in 1..7: {text.strip()!r}")
        return cls.build(s0, t0, moves)

    def __str__(self) -> str:
        return f"({self.s0},{self.t0},{''.join(str(int(m)) for m in self.moves)})"


class TimeSeq(BaseModel):
    """Per-stage times of a scheme: T0 for the base, then one entry per move."""

    base_time: int = Field(..., ge=0)
    move_times: List[int] = Field(default_factory=list)

    @property
    def total(self) -> int:
        return self.base_time + sum(self.move_times)

    @property
    def cumulative(self) -> List[int]:
        out, acc = [self.base_time], self.base_time
        for value in self.move_times:
            acc += value
            out.append(acc)
        return out


class OracleResult(BaseModel):
    """Result of an exhaustive search over initial sets of a k x l box."""

    dims: Tuple[int, int]
    max_time: Time = Field(..., description="Maximum over the search space, never if nothing percolates")
    witness_patterns: List[int] = Field(default_factory=list, description="Smallest maximizing bit patterns")
    witnesses: List[List[Cell]] = Field(default_factory=list, description="Cells of each witness pattern")
    enumerated: int = Field(0, ge=0, description="Patterns in the search space")
    simulated: int = Field(0, ge=0, description="Patterns that survived pruning and were run")
    size: Optional[int] = Field(None, description="Fixed initial-set size, if any")

    @field_validator("witness_patterns")
    @classmethod
    def _sorted_patterns(cls, value: List[int]) -> List[int]:
        if value != sorted(value):
            raise ValueError("witness patterns must be in increasing order")
        return value
