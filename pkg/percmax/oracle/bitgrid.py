"""Batched 2-neighbour runs on small boxes packed into 64-bit words."""

from typing import List, Tuple

import numpy as np

from percmax.models import Cell
from percmax.utils.exceptions import SearchSpaceError

MAX_CELLS = 63


class BitGrid:
    """A k x l box whose cell (x, y) is bit (y-1)*k + (x-1) of a uint64."""

    def __init__(self, k: int, l: int):
        """
        Initialize the packed grid.

        Args:
            k: Width
            l: Height

        Raises:
            SearchSpaceError: If the box has more than 63 cells
        """
        if k * l > MAX_CELLS:
            raise SearchSpaceError(f"A {k}x{l} box does not fit in one 64-bit word")
        self.k, self.l = k, l
        self.cells = k * l
        full = (1 << self.cells) - 1
        first_col = sum(1 << (y * k) for y in range(l))
        last_col = sum(1 << (y * k + k - 1) for y in range(l))
        corners = {0, k - 1, (l - 1) * k, (l - 1) * k + k - 1}
        self.full = np.uint64(full)
        self.not_first_col = np.uint64(full & ~first_col)
        self.not_last_col = np.uint64(full & ~last_col)
        self.corner_mask = np.uint64(sum(1 << b for b in corners))
        self._one = np.uint64(1)
        self._row = np.uint64(k)

    def step(self, state: np.ndarray) -> np.ndarray:
        """One synchronous round for every packed state."""
        left = (state << self._one) & self.not_first_col
        right = (state >> self._one) & self.not_last_col
        below = (state << self._row) & self.full
        above = state >> self._row
        # at least two of the four neighbour planes
        two = (left & right) | ((left | right) & (above | below)) | (above & below)
        return state | two

    def run(self, patterns: np.ndarray, track_last: bool = False) -> Tuple[np.ndarray, np.ndarray]:
        """
        Run every pattern to its fixed point.

        Args:
            patterns: Initial states as uint64
            track_last: Also return the cells infected in the final step

        Returns:
            (times, last) where times is the percolation time or -1, and
            last holds the final-step cells (zeros unless track_last)
        """
        current = patterns.astype(np.uint64, copy=True)
        times = np.zeros(current.shape, dtype=np.int64)
        last = np.zeros_like(current)
        active = np.arange(current.size)
        t = 0
        while active.size:
            t += 1
            state = current[active]
            grown = self.step(state)
            changed = grown != state
            active = active[changed]
            current[active] = grown[changed]
            times[active] = t
            if track_last:
                last[active] = grown[changed] & ~state[changed]
        return np.where(current == self.full, times, -1), last

    def cells_of(self, pattern: int) -> List[Cell]:
        return [(b % self.k + 1, b // self.k + 1) for b in range(self.cells) if pattern >> b & 1]

    def pattern_of(self, cells: List[Cell]) -> int:
        return sum(1 << ((y - 1) * self.k + (x - 1)) for x, y in cells)
