"""Exhaustive oracle over all initial sets of small boxes."""

from .bitgrid import BitGrid
from .base import (
    CornerClaimEvaluator,
    FixedSizeEvaluator,
    MaxTimeEvaluator,
    MinSizeEvaluator,
    RangeEvaluator,
    RangeResult,
)
from .coordinator import OracleCoordinator
from .brute_force import (
    brute_force_max,
    brute_force_max_fixed_size,
    verify_corner_claim,
    verify_fact_min_size,
    witness_set,
)

__all__ = [
    "BitGrid",
    "CornerClaimEvaluator",
    "FixedSizeEvaluator",
    "MaxTimeEvaluator",
    "MinSizeEvaluator",
    "RangeEvaluator",
    "RangeResult",
    "OracleCoordinator",
    "brute_force_max",
    "brute_force_max_fixed_size",
    "verify_corner_claim",
    "verify_fact_min_size",
    "witness_set",
]
