"""Range evaluators: each scans a contiguous slice of an enumerated search space."""

from abc import ABC, abstractmethod
from itertools import chain, combinations, islice
from math import ceil, comb
from typing import Iterator, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from percmax.oracle.bitgrid import BitGrid


class RangeResult(BaseModel):
    """Partial result over one range; results of adjacent ranges reduce associatively."""

    best_time: int = Field(-1, description="Largest percolation time seen, -1 if none percolated")
    patterns: List[int] = Field(default_factory=list, description="Smallest patterns attaining best_time")
    enumerated: int = 0
    simulated: int = 0
    min_size: Optional[int] = Field(None, description="Smallest percolating pattern size")
    holds: bool = Field(True, description="Whether the checked property held throughout")


class RangeEvaluator(ABC):
    """Base class for exhaustive scans over the subsets of a k x l box."""

    def __init__(self, k: int, l: int, witness_limit: int = 8, batch_size: int = 1 << 16):
        """
        Initialize the evaluator.

        Args:
            k: Width
            l: Height
            witness_limit: Number of smallest maximizing patterns to keep
            batch_size: Patterns simulated per numpy batch
        """
        self.k, self.l = k, l
        self.witness_limit = witness_limit
        self.batch_size = batch_size
        self.grid = BitGrid(k, l)

    @property
    def total(self) -> int:
        """Size of the enumerated space."""
        return 1 << (self.k * self.l)

    @property
    def min_percolating(self) -> int:
        """Fewest cells that can span the box: ceil((k + l) / 2)."""
        return ceil((self.k + self.l) / 2)

    def batches(self, start: int, end: int) -> Iterator[np.ndarray]:
        for lo in range(start, end, self.batch_size):
            yield np.arange(lo, min(end, lo + self.batch_size), dtype=np.uint64)

    def prune(self, patterns: np.ndarray) -> np.ndarray:
        return patterns[np.bitwise_count(patterns) >= self.min_percolating]

    def _keep_best(self, result: RangeResult, patterns: np.ndarray, times: np.ndarray) -> None:
        if not times.size:
            return
        top = int(times.max())
        if top < 0 or top < result.best_time:
            return
        winners = patterns[times == top][: self.witness_limit].tolist()
        if top > result.best_time:
            result.best_time, result.patterns = top, winners
        else:
            result.patterns = sorted(result.patterns + winners)[: self.witness_limit]

    @abstractmethod
    def evaluate_range(self, start: int, end: int) -> RangeResult:
        """
        Scan indices [start, end) of the search space.

        Args:
            start: First index
            end: One past the last index

        Returns:
            RangeResult for the slice
        """
        pass

    def reduce(self, results: Sequence[RangeResult]) -> RangeResult:
        """Combine range results in order."""
        merged = RangeResult()
        for part in results:
            merged.enumerated += part.enumerated
            merged.simulated += part.simulated
            merged.holds = merged.holds and part.holds
            if part.min_size is not None:
                merged.min_size = part.min_size if merged.min_size is None else min(merged.min_size, part.min_size)
            if part.best_time > merged.best_time:
                merged.best_time, merged.patterns = part.best_time, list(part.patterns)
            elif part.best_time == merged.best_time and part.best_time >= 0:
                merged.patterns = sorted(merged.patterns + part.patterns)[: self.witness_limit]
        return merged


class MaxTimeEvaluator(RangeEvaluator):
    """Maximum percolation time over all subsets, skipping those too small to percolate."""

    def evaluate_range(self, start: int, end: int) -> RangeResult:
        result = RangeResult(enumerated=end - start)
        for patterns in self.batches(start, end):
            patterns = self.prune(patterns)
            result.simulated += patterns.size
            times, _ = self.grid.run(patterns)
            self._keep_best(result, patterns, times)
        return result


class FixedSizeEvaluator(RangeEvaluator):
    """Maximum percolation time over subsets of exactly `size` cells, in combination order."""

    def __init__(self, k: int, l: int, size: int, witness_limit: int = 8, batch_size: int = 1 << 16):
        super().__init__(k, l, witness_limit, batch_size)
        self.size = size

    @property
    def total(self) -> int:
        return comb(self.k * self.l, self.size)

    def evaluate_range(self, start: int, end: int) -> RangeResult:
        result = RangeResult(enumerated=end - start)
        if self.size < self.min_percolating or start >= end:
            return result
        combos = islice(combinations(range(self.k * self.l), self.size), start, end)
        one = np.uint64(1)
        while True:
            chunk = list(islice(combos, self.batch_size))
            if not chunk:
                break
            bits = np.fromiter(chain.from_iterable(chunk), dtype=np.uint64).reshape(len(chunk), self.size)
            patterns = np.bitwise_or.reduce(one << bits, axis=1)
            result.simulated += patterns.size
            times, _ = self.grid.run(patterns)
            # combinations come in lexicographic order, not pattern order
            order = np.argsort(patterns, kind="stable")
            self._keep_best(result, patterns[order], times[order])
        return result


class MinSizeEvaluator(RangeEvaluator):
    """Smallest percolating subset size; nothing is pruned."""

    def evaluate_range(self, start: int, end: int) -> RangeResult:
        result = RangeResult(enumerated=end - start)
        for patterns in self.batches(start, end):
            result.simulated += patterns.size
            times, _ = self.grid.run(patterns)
            sizes = np.bitwise_count(patterns[times >= 0])
            if sizes.size:
                smallest = int(sizes.min())
                result.min_size = smallest if result.min_size is None else min(result.min_size, smallest)
        return result


class CornerClaimEvaluator(RangeEvaluator):
    """Checks that only corners can be infected at step `target` and nothing later."""

    def __init__(self, k: int, l: int, target: int, witness_limit: int = 8, batch_size: int = 1 << 16):
        super().__init__(k, l, witness_limit, batch_size)
        self.target = target

    def evaluate_range(self, start: int, end: int) -> RangeResult:
        result = RangeResult(enumerated=end - start)
        inner = ~self.grid.corner_mask & self.grid.full
        for patterns in self.batches(start, end):
            patterns = self.prune(patterns)
            result.simulated += patterns.size
            times, last = self.grid.run(patterns, track_last=True)
            if (times > self.target).any():
                result.holds = False
            at_target = times == self.target
            if self.target > 0 and ((last[at_target] & inner) != 0).any():
                result.holds = False
            self._keep_best(result, patterns, times)
        return result
