"""Utility modules for percmax."""

from .exceptions import (
    PercolationError,
    InvalidInputError,
    GridFileError,
    SearchSpaceError,
    ConsistencyError,
)
from .parallel import run_ranges, split_range

__all__ = [
    "PercolationError",
    "InvalidInputError",
    "GridFileError",
    "SearchSpaceError",
    "ConsistencyError",
    "run_ranges",
    "split_range",
]
