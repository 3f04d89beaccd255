"""
Enumerations shared across the sheaf community detection package.
"""

from __future__ import annotations

from enum import Enum


class ErrorType(Enum):
    """Error type enumeration for standardized error handling."""

    VALIDATION_ERROR = "validation_error"
    PARSE_ERROR = "parse_error"
    RANGE_ERROR = "range_error"
    DOMAIN_ERROR = "domain_error"
    NUMERICAL_ERROR = "numerical_error"
    UNRESOLVABLE_SINGLETON = "unresolvable_singleton"
    IO_ERROR = "io_error"
    UNKNOWN_ERROR = "unknown_error"

    def __str__(self) -> str:
        return self.value


class BumpKind(Enum):
    """Decay profiles for the bounded confidence model."""

    PHI1 = "phi1"
    PHI2 = "phi2"
    PHI3 = "phi3"
    PHI4 = "phi4"
    CONSTANT_ONE = "constant_one"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_string(cls, value: str) -> BumpKind:
        """Parse a bump kind from ``"phi2"``, ``"2"`` or ``"constant_one"``.

        Raises:
            TypeError: If value is not a string
            ValueError: If value names no bump function
        """
        if not isinstance(value, str):
            raise TypeError(f"value must be str, got {type(value)}")

        key = value.strip().lower()
        if key.isdigit():
            key = f"phi{key}"
        for item in cls:
            if item.value == key:
                return item
        raise ValueError(f"Invalid bump function: {value!r}")


class EvolutionStatus(Enum):
    """Outcome of a time evolution or a detection run."""

    CONVERGED = "converged"
    ABORTED = "aborted"

    def __str__(self) -> str:
        return self.value


class Algorithm(Enum):
    """Community detection algorithms available to the sweep harness."""

    CONSTANT = "constant"
    NONCONSTANT = "nonconstant"
    DETERMINISTIC = "deterministic"

    def __str__(self) -> str:
        return self.value

    @property
    def parameter_names(self) -> tuple:
        """Names of the grid columns for this algorithm, in CSV order."""
        return {
            Algorithm.CONSTANT: ("d", "phi", "n"),
            Algorithm.NONCONSTANT: ("p",),
            Algorithm.DETERMINISTIC: ("a", "b"),
        }[self]
