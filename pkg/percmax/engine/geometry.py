"""Semi-perimeter, distances and the rectangle-merging process."""

import heapq
import logging
from itertools import product
from typing import Dict, List, Optional, Protocol, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from percmax.engine.simulator import simulate
from percmax.engine.topology import CellSet, Topology
from percmax.models import NEVER, Rect, Time
from percmax.utils.exceptions import InvalidInputError

logger = logging.getLogger(__name__)


class BoxLike(Protocol):
    """Anything with an integer origin and side lengths."""

    @property
    def origin(self) -> Tuple[int, ...]: ...

    @property
    def sides(self) -> Tuple[int, ...]: ...


class MergeNode(BaseModel):
    """A node of the merge forest; leaves are single initial cells."""

    rect: Rect
    children: Optional[Tuple[int, int]] = Field(None, description="Indices of the merged nodes")


class RectDecomposition(BaseModel):
    """Final rectangles of the merging process plus the forest that built them."""

    nodes: List[MergeNode] = Field(default_factory=list)
    roots: List[int] = Field(default_factory=list, description="Node indices of the final rectangles")

    @property
    def rects(self) -> List[Rect]:
        return [self.nodes[i].rect for i in self.roots]

    @property
    def leaves(self) -> List[Rect]:
        return [node.rect for node in self.nodes if node.children is None]

    def covered(self) -> CellSet:
        cells = []
        for rect in self.rects:
            cells.extend(rect.cells())
        return CellSet(cells)


def semi_perimeter(cells: CellSet) -> int:
    """
    Half the number of lattice edges between the set and its complement.

    Args:
        cells: Any finite set of cells in Z^d

    Returns:
        The semi-perimeter (0 for the empty set)
    """
    if not len(cells):
        return 0
    lo, hi = cells.bounding_box
    dims = [b - a + 1 for a, b in zip(lo, hi)]
    mask = cells.translate([1 - a for a in lo]).to_mask(dims)
    padded = np.pad(mask, 1)
    edges = sum(int(np.count_nonzero(np.diff(padded, axis=axis))) for axis in range(padded.ndim))
    return edges // 2


def set_distance(a: CellSet, b: CellSet, chunk: int = 1024) -> int:
    """
    Minimum l1 distance between a cell of a and a cell of b.

    Raises:
        InvalidInputError: If either set is empty
    """
    if not len(a) or not len(b):
        raise InvalidInputError("Distance is undefined for an empty cell set")
    left, right = a.to_array(), b.to_array()
    best = None
    for start in range(0, len(left), chunk):
        block = np.abs(left[start:start + chunk, None, :] - right[None, :, :]).sum(axis=2)
        value = int(block.min())
        best = value if best is None else min(best, value)
        if best == 0:
            break
    return best


def rectangle_process(initial: CellSet) -> RectDecomposition:
    """
    Merge rectangles at distance at most 2 into their bounding rectangle until none remain.

    Starts from one 1x1 rectangle per cell. Candidate pairs are taken from a
    heap ordered by (distance, origins), so the forest is reproducible.

    Args:
        initial: Non-empty set of two-dimensional cells

    Returns:
        RectDecomposition whose final rectangles are pairwise at distance >= 3

    Raises:
        InvalidInputError: If the set is empty or not two-dimensional
    """
    if not len(initial):
        raise InvalidInputError("The rectangle process needs a non-empty set")
    if initial.dimension != 2:
        raise InvalidInputError("The rectangle process works on two-dimensional cells")

    nodes = [MergeNode(rect=Rect(origin=cell, width=1, height=1)) for cell in initial.sorted()]
    alive: Dict[int, Rect] = {i: node.rect for i, node in enumerate(nodes)}
    heap: List[tuple] = []

    def push(i: int, j: int, dist: int) -> None:
        first, second = sorted([(alive[i].origin, i), (alive[j].origin, j)])
        heapq.heappush(heap, (dist, first[0], second[0], first[1], second[1]))

    # seed the heap with every pair of cells at distance <= 2
    coords = initial.to_array()
    for i in range(len(coords) - 1):
        dists = np.abs(coords[i + 1:] - coords[i]).sum(axis=1)
        for offset in np.flatnonzero(dists <= 2):
            push(i, i + 1 + int(offset), int(dists[offset]))

    while heap:
        _, _, _, i, j = heapq.heappop(heap)
        if i not in alive or j not in alive:
            continue
        # replace both rectangles by their bounding box
        merged = alive.pop(i).bounding(alive.pop(j))
        k = len(nodes)
        nodes.append(MergeNode(rect=merged, children=(i, j)))
        alive[k] = merged
        for other, rect in list(alive.items()):
            if other == k:
                continue
            dist = merged.distance(rect)
            if dist <= 2:
                push(k, other, dist)

    roots = sorted(alive, key=lambda i: alive[i].origin)
    logger.debug("Rectangle process: %d cells -> %d rectangles", len(initial), len(roots))
    return RectDecomposition(nodes=nodes, roots=roots)


def span_time(boxes: Sequence[BoxLike]) -> Time:
    """
    Time for fully infected boxes to fill their common bounding box.

    Args:
        boxes: Boxes of equal dimension

    Returns:
        Percolation time of the bounding box, or NEVER if it is not filled
    """
    lo = [min(b.origin[a] for b in boxes) for a in range(len(boxes[0].origin))]
    hi = [max(b.origin[a] + b.sides[a] - 1 for b in boxes) for a in range(len(lo))]
    dims = [h - l + 1 for l, h in zip(lo, hi)]
    cells = []
    for box in boxes:
        ranges = [range(o - l + 1, o - l + 1 + s) for o, s, l in zip(box.origin, box.sides, lo)]
        cells.extend(product(*ranges))
    return simulate(CellSet(cells), Topology.box(*dims)).total_time


def union_span_time(first: Rect, second: Rect) -> Time:
    """
    Time for two fully infected rectangles to span their bounding rectangle.

    Returns:
        The time, or NEVER when the rectangles are at distance more than 2
    """
    if first.distance(second) > 2:
        return NEVER
    return span_time([first, second])


def is_internally_spanned(initial: CellSet, rect: Rect) -> bool:
    """True if the cells of the set inside rect percolate rect on their own."""
    inside = initial.within(rect.origin, rect.sides)
    local = inside.translate((1 - rect.origin[0], 1 - rect.origin[1]))
    return simulate(local, Topology.box(rect.width, rect.height)).percolated
