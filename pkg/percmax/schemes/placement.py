"""Realization of schemes as concrete initial sets."""

import logging
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from percmax.engine import CellSet, Topology, simulate
from percmax.models import Cell, Move, Rect, Scheme
from percmax.oracle.brute_force import witness_set
from percmax.recurrence import MemoTable
from percmax.schemes.calculus import time_sequence
from percmax.schemes.search import find_scheme
from percmax.utils.exceptions import ConsistencyError, InvalidInputError

logger = logging.getLogger(__name__)

PREFIX_CHECK_CELLS = 400

# Corner of the previous rectangle, in a frame where the previous rectangle
# is [1..a] x [1..b] and the new one is [1..k] x [1..l], that each move grows from.
_CANONICAL_CORNER = {
    Move.M1: lambda a, b: (a, b),
    Move.M2: lambda a, b: (a, b),
    Move.M3: lambda a, b: (a, b),
    Move.M4: lambda a, b: (a, 1),
    Move.M5: lambda a, b: (1, b),
    Move.M6: lambda a, b: (a, b),
    Move.M7: lambda a, b: (a, b),
}

_NEW_SEEDS = {
    Move.M1: lambda k, l: [(k, l)],
    Move.M2: lambda k, l: [(k, l)],
    Move.M3: lambda k, l: [(k, l)],
    Move.M4: lambda k, l: [(k, 1), (k, l)],
    Move.M5: lambda k, l: [(1, l), (k, l)],
    Move.M6: lambda k, l: [(k, l - 1), (1, l)],
    Move.M7: lambda k, l: [(k - 1, l), (k, 1)],
}

_NEW_CORNERS = {
    Move.M2: lambda k, l: [(k, 1)],
    Move.M3: lambda k, l: [(1, l)],
    Move.M4: lambda k, l: [(1, l)],
    Move.M5: lambda k, l: [(k, 1)],
    Move.M6: lambda k, l: [(k, l)],
    Move.M7: lambda k, l: [(k, l)],
}


class PlacementState(BaseModel):
    """Seeds placed so far, the rectangle they span and its last-infected corners."""

    rect: Rect
    corners: List[Cell] = Field(default_factory=list, description="Corners infected last, preferred first")
    seeds: List[Cell] = Field(default_factory=list)
    stages: List[Rect] = Field(default_factory=list, description="Rectangle after the base and after each move")

    def cellset(self) -> CellSet:
        return CellSet(self.seeds)

    def translated(self, dx: int, dy: int) -> "PlacementState":
        shift = lambda c: (c[0] + dx, c[1] + dy)  # noqa: E731
        return PlacementState(
            rect=self.rect.translate(dx, dy),
            corners=[shift(c) for c in self.corners],
            seeds=[shift(c) for c in self.seeds],
            stages=[r.translate(dx, dy) for r in self.stages],
        )


def _strip(length: int) -> Tuple[List[Cell], List[Cell]]:
    """Seeds and last corners of a slowest length x 2 strip."""
    if length % 2 == 0:
        seeds, corners, reach = [(1, 1), (2, 2)], [(2, 1), (1, 2)], 2
    else:
        seeds, corners, reach = [(1, 1), (1, 2)], [(1, 1)], 1
    while reach < length:
        y = next(c[1] for c in corners if c[0] == reach)
        seeds.append((reach + 2, y))
        corners = [(reach + 2, 3 - y)]
        reach += 2
    return seeds, corners


def _base(s0: int, t0: int) -> Tuple[List[Cell], List[Cell]]:
    if (s0, t0) == (3, 3):
        seeds = witness_set(3, 3).sorted()
        report = simulate(CellSet(seeds), Topology.box(3, 3))
        corners = [c for c in Topology.box(3, 3).corners() if report.time_of(c) == report.total_time]
        return seeds, corners
    if t0 == 2:
        return _strip(s0)
    if s0 == 2:
        seeds, corners = _strip(t0)
        return [(y, x) for x, y in seeds], [(y, x) for x, y in corners]
    if s0 == 1 or t0 == 1:
        length = max(s0, t0)
        line = sorted(set(range(1, length + 1, 2)) | {length})
        seeds = [(1, i) for i in line] if s0 == 1 else [(i, 1) for i in line]
        return seeds, []
    raise InvalidInputError(f"({s0},{t0}) is not a base rectangle")


def place(s0: int, t0: int, moves: Sequence[Move], anchor: Sequence[int] = (1, 1)) -> PlacementState:
    """
    Lay out seeds for a base followed by moves, without any simulation.

    Each move is applied under the reflection that maps the current last
    corner onto the corner the move grows from.

    Args:
        s0: Base width
        t0: Base height
        moves: Moves to apply
        anchor: Lower-left cell of the final rectangle

    Returns:
        PlacementState of the final rectangle

    Raises:
        InvalidInputError: If (s0, t0) is not a base rectangle
        ConsistencyError: If a move must grow from a base without a last corner
    """
    seeds, corners = _base(s0, t0)
    x0, y0, w, h = 1, 1, s0, t0
    stages = [Rect(origin=(x0, y0), width=w, height=h)]
    for move in moves:
        if not corners:
            raise ConsistencyError(f"Base ({s0},{t0}) has no last corner to grow from")
        ds, dt = move.delta
        a, b, k, l = w, h, w + ds, h + dt
        # last corner in the frame of the current rectangle
        cx, cy = corners[0][0] - x0 + 1, corners[0][1] - y0 + 1
        want_x, want_y = _CANONICAL_CORNER[move](a, b)
        flip_x, flip_y = cx != want_x, cy != want_y
        # a flipped axis must put the corner on the opposite side
        if (flip_x and cx != a + 1 - want_x) or (flip_y and cy != b + 1 - want_y):
            raise ConsistencyError(f"Corner {corners[0]} is not a corner of the {a}x{b} rectangle")

        def to_abs(cell: Cell, fx: bool = flip_x, fy: bool = flip_y, ox: int = x0, oy: int = y0,
                   pa: int = a, pb: int = b) -> Cell:
            x, y = cell
            return (ox - 1 + (pa + 1 - x if fx else x), oy - 1 + (pb + 1 - y if fy else y))

        seeds.extend(to_abs(c) for c in _NEW_SEEDS[move](k, l))
        if move is Move.M1:
            fresh = ([(1, l)] if k >= l else []) + ([(k, 1)] if l >= k else [])
        else:
            fresh = _NEW_CORNERS[move](k, l)
        corners = [to_abs(c) for c in fresh]
        # under a flip the rectangle grows toward lower coordinates
        x0 = x0 - (k - a) if flip_x else x0
        y0 = y0 - (l - b) if flip_y else y0
        w, h = k, l
        stages.append(Rect(origin=(x0, y0), width=w, height=h))
        logger.debug("Move %d -> %dx%d at (%d,%d)", int(move), w, h, x0, y0)

    state = PlacementState(rect=stages[-1], corners=corners, seeds=seeds, stages=stages)
    return state.translated(anchor[0] - x0, anchor[1] - y0)


def realize_scheme(
    scheme: Scheme,
    anchor: Sequence[int] = (1, 1),
    verify: bool = True,
    check_prefixes: Optional[bool] = None,
    table: Optional[MemoTable] = None,
) -> CellSet:
    """
    Concrete initial set whose percolation time is the scheme's time.

    Every intermediate rectangle costs one extra simulation, so a full
    prefix check of an n x n target is roughly n times the work of the
    final check. By default it only runs for targets of at most
    PREFIX_CHECK_CELLS cells.

    Args:
        scheme: Scheme to realize
        anchor: Lower-left cell of the target box
        verify: Simulate the whole box and compare with the scheme's time
        check_prefixes: Also check that every intermediate rectangle is
            spanned by its own seeds in the scheme's cumulative time;
            None checks them when verifying a small target
        table: Memo table for the base time

    Returns:
        The seed set

    Raises:
        ConsistencyError: If a simulation disagrees with the scheme
    """
    state = place(scheme.s0, scheme.t0, scheme.moves)
    if check_prefixes is None:
        check_prefixes = verify and state.rect.width * state.rect.height <= PREFIX_CHECK_CELLS
    if verify or check_prefixes:
        sequence = time_sequence(scheme, table)
        stages = state.stages if check_prefixes else state.stages[-1:]
        targets = sequence.cumulative if check_prefixes else [sequence.total]
        seeds = state.cellset()
        # stages in order; the first mismatch is raised
        for rect, expected in zip(stages, targets):
            local = seeds.within(rect.origin, rect.sides).translate((1 - rect.origin[0], 1 - rect.origin[1]))
            report = simulate(local, Topology.box(rect.width, rect.height))
            if report.total_time != expected:
                raise ConsistencyError(
                    f"Scheme {scheme} spans {rect.width}x{rect.height} in {report.total_time}, expected {expected}"
                )
    return state.cellset().translate((anchor[0] - 1, anchor[1] - 1))


def perfect_set(k: int, l: int, verify: bool = True, table: Optional[MemoTable] = None) -> CellSet:
    """
    A (k, l)-perfect set: its percolation time on the k x l box is M(k, l).

    Raises:
        InvalidInputError: If k or l is not positive
    """
    scheme = find_scheme(k, l, table)
    cells = realize_scheme(scheme, verify=verify, table=table)
    logger.info("Perfect set for %dx%d from %s has %d cells", k, l, scheme, len(cells))
    return cells

