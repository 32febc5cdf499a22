"""Custom exceptions for percmax."""

from typing import Optional


class PercolationError(Exception):
    """Base exception for all percmax errors."""

    pass


class InvalidInputError(PercolationError):
    """Raised when an argument lies outside the domain of an operation."""

    pass


class GridFileError(InvalidInputError):
    """Raised when a grid file, scheme text or table cache cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        """
        Initialize the parse error.

        Args:
            message: Description of the problem
            line: 1-based line number of the offending line, if known
        """
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SearchSpaceError(InvalidInputError):
    """Raised when an exhaustive search exceeds its configured limits."""

    pass


class ConsistencyError(PercolationError):
    """Raised when a construction disagrees with its simulated behaviour."""

    pass
