"""Explicit slow constructions: the square slow set, the torus set and the cuboid sets."""

import logging
from math import floor
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from percmax.bounds.formulas import lower_bound_value
from percmax.engine import CellSet, Topology, simulate, span_time
from percmax.models import NEVER, Cell, Move
from percmax.recurrence import MemoTable, max_time
from percmax.schemes.placement import PlacementState, place
from percmax.schemes.search import find_scheme
from percmax.utils.exceptions import ConsistencyError, InvalidInputError

logger = logging.getLogger(__name__)


class PhasePlan(BaseModel):
    """Width of the first phase and the four phase times of the slow set on [n]^2."""

    n: int = Field(..., ge=6)
    s: int = Field(..., ge=1, description="Width of the Phase 1 strip")
    phase_times: Tuple[int, int, int, int] = Field(..., description="Base strip, Move 1, Move 4s, Move 6s")

    @model_validator(mode="after")
    def _check_width(self) -> "PhasePlan":
        if not (3 * self.s > self.n - 9 and 3 * self.s <= self.n + 9):
            raise ValueError(f"s={self.s} is outside (n/3-3, n/3+3] for n={self.n}")
        if (self.n + self.s - 5) % 6:
            raise ValueError(f"6 does not divide n+s-5 = {self.n + self.s - 5}")
        return self

    @property
    def move4_count(self) -> int:
        return (self.n - self.s - 1) // 2

    @property
    def move6_count(self) -> int:
        return (self.n + self.s - 5) // 6

    @property
    def moves(self) -> List[Move]:
        return [Move.M1] + [Move.M4] * self.move4_count + [Move.M6] * self.move6_count

    @property
    def total(self) -> int:
        return sum(self.phase_times)


def _slow_width(n: int) -> int:
    for s in range(max(1, floor(n / 3 - 3) + 1), n // 3 + 4):
        if 3 * s > n - 9 and 3 * s <= n + 9 and (n + s - 5) % 6 == 0:
            return s
    raise ConsistencyError(f"No admissible Phase 1 width for n={n}")


def phase_plan(n: int) -> PhasePlan:
    """
    Closed-form plan of the slow set on [n]^2.

    Raises:
        InvalidInputError: If n < 6
    """
    if n < 6:
        raise InvalidInputError(f"The slow set needs n >= 6, got {n}")
    s = _slow_width(n)
    phase3 = (3 * n * n - 2 * s * n - s * s + 8 * n - 12 * s - 11) // 8
    plan_times = ((3 * (s - 1)) // 2, max(s + 1, 3) - 1, phase3, (2 * n - 1) * ((n + s - 5) // 6))
    return PhasePlan(n=n, s=s, phase_times=plan_times)


def _slow_placement(plan: PhasePlan) -> PlacementState:
    state = place(plan.s, 2, plan.moves)
    if state.rect.sides != (plan.n, plan.n):
        raise ConsistencyError(f"Slow set for n={plan.n} spans {state.rect.sides}")
    return state


def phase_times(n: int) -> Tuple[int, int, int, int]:
    """
    Phase times of the slow set measured by simulating each phase's prefix.

    Returns:
        The four phase times, to be compared with phase_plan(n).phase_times
    """
    plan = phase_plan(n)
    state = _slow_placement(plan)
    seeds = state.cellset()
    ends = [0, 1, 1 + plan.move4_count, len(state.stages) - 1]
    reached = []
    for index in ends:
        rect = state.stages[index]
        local = seeds.within(rect.origin, rect.sides).translate((1 - rect.origin[0], 1 - rect.origin[1]))
        report = simulate(local, Topology.box(*rect.sides))
        if not report.percolated:
            raise ConsistencyError(f"Slow set prefix {rect.sides} for n={n} does not percolate")
        reached.append(report.total_time)
    return (reached[0], reached[1] - reached[0], reached[2] - reached[1], reached[3] - reached[2])


def slow_set(n: int, verify: bool = False) -> CellSet:
    """
    Initial set of [n]^2 that percolates in at least 13n^2/18 - 14n/9 - 5/3 steps.

    A strip of width s and height 2, one Move 1, (n-s-1)/2 Move 4s and
    (n+s-5)/6 Move 6s.

    Args:
        n: Side of the square
        verify: Simulate and check the time against the plan

    Returns:
        The seed set inside [n]^2

    Raises:
        InvalidInputError: If n < 6
        ConsistencyError: If verification fails
    """
    plan = phase_plan(n)
    cells = _slow_placement(plan).cellset()
    if verify:
        report = simulate(cells, Topology.box(n, n))
        if not report.percolated or report.total_time < lower_bound_value(n):
            raise ConsistencyError(f"Slow set for n={n} takes {report.total_time}, below the lower bound")
        if report.total_time != plan.total:
            raise ConsistencyError(f"Slow set for n={n} takes {report.total_time}, plan says {plan.total}")
    logger.info("Slow set for n=%d: s=%d, %d seeds, planned time %d", n, plan.s, len(cells), plan.total)
    return cells


def torus_slow_set(n: int, verify: bool = False, table: Optional[MemoTable] = None) -> CellSet:
    """
    Slow initial set of the n x n torus.

    A perfect set of [n-2]^2 whose last corner sits at (n-2, n-2), plus the
    cell (n-1, n-1).

    Raises:
        InvalidInputError: If n < 4
        ConsistencyError: If verification fails
    """
    if n < 4:
        raise InvalidInputError(f"The torus construction needs n >= 4, got {n}")
    m = n - 2
    scheme = find_scheme(m, m, table)
    state = place(scheme.s0, scheme.t0, scheme.moves)
    cells = state.cellset()
    # move the last corner to (m, m), next to the extra seed
    if state.corners:
        cx, cy = state.corners[0]
        if cx != m:
            cells = cells.reflect(0, 1, m)
        if cy != m:
            cells = cells.reflect(1, 1, m)
    cells = cells | CellSet([(n - 1, n - 1)])
    if verify:
        report = simulate(cells, Topology.torus(n))
        target = max_time(m, m, table)
        if not report.percolated or report.total_time < target:
            raise ConsistencyError(f"Torus set for n={n} takes {report.total_time}, expected at least {target}")
    return cells


class Cuboid(BaseModel):
    """Axis-aligned box of cells in any dimension."""

    model_config = ConfigDict(frozen=True)

    origin: Tuple[int, ...]
    sides: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_shape(self) -> "Cuboid":
        if len(self.origin) != len(self.sides):
            raise ValueError("origin and sides differ in dimension")
        if any(s < 1 for s in self.sides):
            raise ValueError(f"sides must be positive, got {self.sides}")
        return self

    @property
    def far(self) -> Tuple[int, ...]:
        return tuple(o + s - 1 for o, s in zip(self.origin, self.sides))

    @property
    def diam(self) -> int:
        """l1 diameter, the sum of (side - 1)."""
        return sum(s - 1 for s in self.sides)

    def distance(self, other: "Cuboid") -> int:
        return sum(
            max(0, lo2 - hi1, lo1 - hi2)
            for lo1, hi1, lo2, hi2 in zip(self.origin, self.far, other.origin, other.far)
        )

    def bounding(self, other: "Cuboid") -> "Cuboid":
        lo = tuple(min(a, b) for a, b in zip(self.origin, other.origin))
        hi = tuple(max(a, b) for a, b in zip(self.far, other.far))
        return Cuboid(origin=lo, sides=tuple(h - l + 1 for l, h in zip(lo, hi)))


class CuboidConstruction(BaseModel):
    """Seeds of the 3-dimensional slow set, the box they fill and its last corner."""

    n: int
    s: int = Field(..., description="Width of the planar strip")
    dims: Tuple[int, int, int]
    seeds: List[Cell]
    last_corner: Cell


def _cuboid_width(n: int) -> int:
    best: Optional[int] = None
    for c in range(max(1, n // 3 - 3), n // 3 + 5):
        if 3 * c > n + 12 or (n + c - 5) % 4:
            continue
        if best is None or abs(3 * c - n) < abs(3 * best - n):
            best = c
    if best is None:
        raise ConsistencyError(f"No admissible strip width for the cuboid construction with n={n}")
    return best


class _Growth:
    """A growing cuboid with the corner infected last."""

    def __init__(self, lo: List[int], hi: List[int], corner: List[int], seeds: List[Cell]):
        self.lo, self.hi, self.corner, self.seeds = lo, hi, corner, seeds

    def _outward(self, axis: int) -> int:
        return 1 if self.corner[axis] == self.hi[axis] else -1

    def _grow(self, axis: int, sign: int, by: int) -> None:
        if sign > 0:
            self.hi[axis] += by
        else:
            self.lo[axis] -= by

    def _antipode(self, cell: List[int], keep: int) -> List[int]:
        return [
            x if i == keep else (self.hi[i] if x == self.lo[i] else self.lo[i])
            for i, x in enumerate(cell)
        ]

    def extend(self, axis: int, by: int) -> None:
        """Seed the cell `by` steps beyond the corner along axis and grow the box by `by`."""
        sign = self._outward(axis)
        seed = list(self.corner)
        seed[axis] += by * sign
        self.seeds.append(tuple(seed))
        self._grow(axis, sign, by)
        self.corner = self._antipode(seed, axis)

    @property
    def extent(self) -> List[int]:
        return [h - l + 1 for l, h in zip(self.lo, self.hi)]


def cuboid_construction(n: int) -> CuboidConstruction:
    """
    Slow initial set of [n]^3.

    A planar slow strip grown to n x h at the bottom layer; then rounds
    that extend y by 2 and z by 1 until y reaches n; then rounds that
    extend z by 2 and again by 1 until z reaches n.

    Raises:
        InvalidInputError: If n < 6
    """
    if n < 6:
        raise InvalidInputError(f"The cuboid construction needs n >= 6, got {n}")
    s = _cuboid_width(n)
    planar = place(s, 2, [Move.M1] + [Move.M4] * ((n - s - 1) // 2))
    width, height = planar.rect.sides
    corner = planar.corners[0]
    box = _Growth([1, 1, 1], [width, height, 1], [corner[0], corner[1], 1], [(x, y, 1) for x, y in planar.seeds])

    for _ in range((n - height) // 2):
        box.extend(1, 2)
        box.extend(2, 1)
    gap = n - box.extent[2]
    rounds, doubles = gap // 3, 0
    if gap % 3 == 2:
        doubles = 1
    elif gap % 3 == 1:
        rounds, doubles = rounds - 1, 2
    for _ in range(rounds):
        box.extend(2, 2)
        box.extend(2, 1)
    for _ in range(doubles):
        box.extend(2, 2)

    shift = [1 - lo for lo in box.lo]
    move = lambda cell: tuple(c + d for c, d in zip(cell, shift))  # noqa: E731
    dims = tuple(box.extent)
    if dims != (n, n, n):
        raise ConsistencyError(f"Cuboid construction for n={n} ends at {dims}")
    return CuboidConstruction(
        n=n, s=s, dims=dims, seeds=sorted(set(map(move, box.seeds))), last_corner=move(box.corner)
    )


def ddim_slow_set(n: int, d: int) -> CellSet:
    """
    Slow initial set of [n]^d for d in {1, 2, 3}.

    Raises:
        InvalidInputError: If d is unsupported or n < 6
    """
    if d not in (1, 2, 3):
        raise InvalidInputError(f"Slow sets are built for d in 1..3, got {d}")
    if n < 6:
        raise InvalidInputError(f"The slow construction needs n >= 6, got {n}")
    if d == 1:
        return CellSet((x,) for x in sorted(set(range(1, n + 1, 2)) | {n}))
    if d == 2:
        return slow_set(n)
    return CellSet(cuboid_construction(n).seeds)


def diam_span_check(first: Cuboid, second: Cuboid) -> bool:
    """
    True if two fully infected cuboids fill their bounding cuboid within diam + 1 steps.

    Raises:
        InvalidInputError: If the union does not span its bounding cuboid
    """
    if len(first.origin) != len(second.origin):
        raise InvalidInputError("Cuboids differ in dimension")
    elapsed = span_time([first, second])
    if elapsed is NEVER:
        raise InvalidInputError(f"{first} and {second} do not span their bounding cuboid")
    return elapsed <= first.bounding(second).diam + 1
