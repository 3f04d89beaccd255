"""
Exception hierarchy for the sheaf community detection package.

Every library error carries an ``ErrorType`` so callers (the CLI in
particular) can map failures to exit codes without string matching.
"""

from __future__ import annotations

from typing import Optional

from .enums import ErrorType


class SheafCommunityError(Exception):
    """Base class for all errors raised by this package."""

    error_type: ErrorType = ErrorType.UNKNOWN_ERROR

    def __init__(self, message: str, error_type: Optional[ErrorType] = None) -> None:
        """Initialize the error.

        Args:
            message: Error message
            error_type: Overrides the class default error type
        """
        super().__init__(message)
        self.message = message
        if error_type is not None:
            self.error_type = error_type


class GraphValidationError(SheafCommunityError, ValueError):
    """Raised when graph data violates the simple-graph invariants."""

    error_type = ErrorType.VALIDATION_ERROR


class EdgeListParseError(GraphValidationError):
    """Raised for malformed lines in an edge-list stream."""

    error_type = ErrorType.PARSE_ERROR

    def __init__(self, message: str, line_number: int) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class VertexRangeError(SheafCommunityError, IndexError):
    """Raised when a vertex index lies outside ``[0, vertex_count)``."""

    error_type = ErrorType.RANGE_ERROR


class DomainError(SheafCommunityError, ValueError):
    """Raised when an argument lies outside the mathematical domain of an operation."""

    error_type = ErrorType.DOMAIN_ERROR


class NumericalFailureError(SheafCommunityError, ArithmeticError):
    """Raised when an integration produces non-finite values."""

    error_type = ErrorType.NUMERICAL_ERROR

    def __init__(self, message: str, time: Optional[float] = None) -> None:
        super().__init__(message)
        self.time = time


class UnresolvableSingletonError(SheafCommunityError):
    """Raised when a singleton cluster has no neighbor to merge into."""

    error_type = ErrorType.UNRESOLVABLE_SINGLETON

    def __init__(self, message: str, vertex: int) -> None:
        super().__init__(message)
        self.vertex = vertex


class ExperimentIOError(SheafCommunityError):
    """Raised when experiment output cannot be written."""

    error_type = ErrorType.IO_ERROR

    def __init__(self, message: str, original_error: Optional[Exception] = None) -> None:
        super().__init__(message)
        self.original_error = original_error
