"""Exhaustive ground truth on small boxes."""

import logging
from functools import lru_cache
from math import ceil, comb
from typing import Optional

from percmax.config import Settings
from percmax.engine.topology import CellSet
from percmax.models import NEVER, OracleResult
from percmax.oracle.base import (
    CornerClaimEvaluator,
    FixedSizeEvaluator,
    MaxTimeEvaluator,
    MinSizeEvaluator,
    RangeEvaluator,
    RangeResult,
)
from percmax.oracle.bitgrid import MAX_CELLS
from percmax.oracle.coordinator import OracleCoordinator
from percmax.utils.exceptions import InvalidInputError, SearchSpaceError

logger = logging.getLogger(__name__)

FIXED_SIZE_GUARD = 10**8
CLAIM_CELL_LIMIT = 16


def _check_dims(k: int, l: int) -> None:
    if k < 1 or l < 1:
        raise InvalidInputError(f"Dimensions must be positive, got ({k},{l})")
    if k * l > MAX_CELLS:
        raise SearchSpaceError(f"{k}x{l} has more than {MAX_CELLS} cells")


def _to_result(evaluator: RangeEvaluator, reduced: RangeResult, size: Optional[int] = None) -> OracleResult:
    return OracleResult(
        dims=(evaluator.k, evaluator.l),
        max_time=reduced.best_time if reduced.best_time >= 0 else NEVER,
        witness_patterns=reduced.patterns,
        witnesses=[evaluator.grid.cells_of(p) for p in reduced.patterns],
        enumerated=reduced.enumerated,
        simulated=reduced.simulated,
        size=size,
    )


def brute_force_max(
    k: int,
    l: int,
    cap: Optional[int] = None,
    force: bool = False,
    jobs: int = 1,
    witness_limit: int = 8,
) -> OracleResult:
    """
    Maximum percolation time of the k x l box over all 2^(kl) initial sets.

    Witnesses are the smallest maximizing bit patterns (bit (y-1)*k + x-1
    is cell (x, y)), so the first witness is canonical.

    Args:
        k: Width
        l: Height
        cap: Largest kl accepted; defaults to the configured oracle cap
        force: Accept kl above the cap (up to 63)
        jobs: Worker processes
        witness_limit: Witnesses to keep

    Returns:
        OracleResult

    Raises:
        SearchSpaceError: If kl exceeds the cap without force
    """
    _check_dims(k, l)
    cap = cap if cap is not None else Settings.from_env().oracle_cap
    if k * l > cap and not force:
        raise SearchSpaceError(f"{k}x{l} has {k * l} cells, above the cap of {cap}; pass force to override")
    evaluator = MaxTimeEvaluator(k, l, witness_limit=witness_limit)
    result = _to_result(evaluator, OracleCoordinator(jobs).run(evaluator))
    logger.info("Oracle M(%d,%d) = %s over %d patterns", k, l, result.max_time, result.enumerated)
    return result


def brute_force_max_fixed_size(k: int, l: int, size: int, jobs: int = 1, witness_limit: int = 8) -> OracleResult:
    """
    Maximum percolation time over initial sets of exactly `size` cells.

    Raises:
        SearchSpaceError: If there are more than 10^8 such sets
    """
    _check_dims(k, l)
    if not 0 <= size <= k * l:
        raise InvalidInputError(f"Set size must lie in 0..{k * l}, got {size}")
    if comb(k * l, size) > FIXED_SIZE_GUARD:
        raise SearchSpaceError(f"C({k * l},{size}) exceeds {FIXED_SIZE_GUARD} sets")
    evaluator = FixedSizeEvaluator(k, l, size, witness_limit=witness_limit)
    return _to_result(evaluator, OracleCoordinator(jobs).run(evaluator), size=size)


def _check_claim_dims(k: int, l: int) -> None:
    _check_dims(k, l)
    if k * l > CLAIM_CELL_LIMIT:
        raise SearchSpaceError(f"Exhaustive claim checks are limited to {CLAIM_CELL_LIMIT} cells")


def verify_fact_min_size(k: int, l: int, jobs: int = 1) -> bool:
    """True if every set spanning the k x l box has at least ceil((k + l) / 2) cells."""
    _check_claim_dims(k, l)
    evaluator = MinSizeEvaluator(k, l)
    reduced = OracleCoordinator(jobs).run(evaluator)
    return reduced.min_size is not None and reduced.min_size >= ceil((k + l) / 2)


def verify_corner_claim(k: int, l: int, jobs: int = 1) -> bool:
    """True if, for every spanning set, each non-corner cell is infected by time M(k, l) - 1."""
    if k < 2 or l < 2:
        raise InvalidInputError(f"The corner claim needs both sides at least 2, got ({k},{l})")
    _check_claim_dims(k, l)
    target = brute_force_max(k, l, jobs=jobs).max_time
    evaluator = CornerClaimEvaluator(k, l, target)
    return OracleCoordinator(jobs).run(evaluator).holds


@lru_cache(maxsize=64)
def witness_set(k: int, l: int) -> CellSet:
    """Canonical slowest initial set of the k x l box."""
    result = brute_force_max(k, l)
    return CellSet(result.witnesses[0])
