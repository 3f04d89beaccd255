#!/usr/bin/env python3
"""
Validators for sheaf community detection.

Contains validation and parsing of command-line input: numeric ranges,
comma-separated grids and sheaf options.
"""

import math
from typing import List, Optional, Tuple

from .constants import PHI_CHOICES, SHEAF_KINDS

MAX_SEED = 2 ** 64 - 1


class ValidationError(Exception):
    """Custom exception for validation errors."""

    def __init__(self, message: str, field: Optional[str] = None, code: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.field = field
        self.code = code


class ValidationResult:
    """Result of a validation operation."""

    def __init__(self, is_valid: bool = True, errors: Optional[List[str]] = None, warnings: Optional[List[str]] = None):
        self.is_valid = is_valid
        self.errors = errors or []
        self.warnings = warnings or []

    def add_error(self, error: str) -> None:
        """Add an error to the result."""
        self.errors.append(error)
        self.is_valid = False

    def add_warning(self, warning: str) -> None:
        """Add a warning to the result."""
        self.warnings.append(warning)

    def has_errors(self) -> bool:
        return len(self.errors) > 0

    def has_warnings(self) -> bool:
        return len(self.warnings) > 0

    def raise_for_errors(self, field: Optional[str] = None) -> None:
        """Raise ValidationError with the first error, if any."""
        if self.errors:
            raise ValidationError(self.errors[0], field=field, code="invalid_value")


class InputValidator:
    """Validates command-line input."""

    @staticmethod
    def validate_range(
        value: float,
        name: str,
        min_val: float = -math.inf,
        max_val: float = math.inf,
        min_inclusive: bool = True,
        max_inclusive: bool = True,
    ) -> ValidationResult:
        """Validate that a finite number lies in a range.

        Args:
            value: Number to validate
            name: Parameter name used in messages
            min_val: Lower bound
            max_val: Upper bound
            min_inclusive: Whether the lower bound is allowed
            max_inclusive: Whether the upper bound is allowed

        Returns:
            ValidationResult with validation status and messages
        """
        result = ValidationResult()
        if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
            result.add_error(f"{name} must be a finite number, got {value!r}")
            return result

        low_ok = value >= min_val if min_inclusive else value > min_val
        high_ok = value <= max_val if max_inclusive else value < max_val
        if not (low_ok and high_ok):
            left = "[" if min_inclusive else "("
            right = "]" if max_inclusive else ")"
            result.add_error(f"{name} must lie in {left}{min_val}, {max_val}{right}, got {value}")
        return result

    @staticmethod
    def validate_positive(value: float, name: str) -> ValidationResult:
        return InputValidator.validate_range(value, name, 0.0, math.inf, min_inclusive=False)

    @staticmethod
    def validate_probability(value: float, name: str = "p") -> ValidationResult:
        return InputValidator.validate_range(value, name, 0.0, 1.0)

    @staticmethod
    def validate_eps(eps: float, threshold: float = 1.0) -> ValidationResult:
        """Validate the consensus tolerance; warn when it is unusually coarse."""
        result = InputValidator.validate_range(
            eps, "eps", 0.0, threshold, min_inclusive=False, max_inclusive=False
        )
        if result.is_valid and eps > 0.1 * threshold:
            result.add_warning(f"eps={eps} is coarse; nearly-agreeing edges will count as consensus")
        return result

    @staticmethod
    def validate_count(value: int, name: str, min_val: int = 1) -> ValidationResult:
        result = ValidationResult()
        if not isinstance(value, int) or isinstance(value, bool) or value < min_val:
            result.add_error(f"{name} must be an integer >= {min_val}, got {value!r}")
        return result

    @staticmethod
    def validate_seed(seed: int) -> ValidationResult:
        result = ValidationResult()
        if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed <= MAX_SEED:
            result.add_error(f"seed must be an integer in [0, 2^64), got {seed!r}")
        return result

    @staticmethod
    def validate_phi_index(phi: int) -> ValidationResult:
        result = ValidationResult()
        if phi not in PHI_CHOICES:
            result.add_error(f"phi must be one of {PHI_CHOICES}, got {phi!r}")
        return result


def parse_float_list(text: str, name: str) -> Tuple[float, ...]:
    """Parse a comma-separated list of finite numbers.

    Raises:
        ValidationError: If the list is empty or an entry is not a finite number
    """
    items = [item.strip() for item in (text or "").split(",")]
    if not any(items):
        raise ValidationError(f"{name} must not be empty", field=name, code="empty_list")
    values = []
    for item in items:
        try:
            value = float(item)
        except ValueError:
            raise ValidationError(f"{name}: {item!r} is not a number", field=name, code="not_a_number") from None
        if not math.isfinite(value):
            raise ValidationError(f"{name}: {item!r} is not finite", field=name, code="not_finite")
        values.append(value)
    return tuple(values)


def parse_int_list(text: str, name: str) -> Tuple[int, ...]:
    """Parse a comma-separated list of integers.

    Raises:
        ValidationError: If the list is empty or an entry is not an integer
    """
    items = [item.strip() for item in (text or "").split(",")]
    if not any(items):
        raise ValidationError(f"{name} must not be empty", field=name, code="empty_list")
    try:
        return tuple(int(item) for item in items)
    except ValueError:
        raise ValidationError(f"{name}: expected comma-separated integers, got {text!r}",
                              field=name, code="not_an_integer") from None


def parse_ab_grid(text: str) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """Parse ``A_LIST:B_LIST`` into two grids.

    Raises:
        ValidationError: If the colon is missing or either list is invalid
    """
    if not text or text.count(":") != 1:
        raise ValidationError(f"--ab-grid expects A_LIST:B_LIST, got {text!r}", field="ab_grid", code="format")
    a_text, b_text = text.split(":")
    return parse_float_list(a_text, "a grid"), parse_float_list(b_text, "b grid")


def parse_sheaf_option(text: str) -> Tuple[str, int]:
    """Parse ``constant:<n>``, ``edgeproj`` or ``twisted``.

    Returns:
        Tuple of sheaf kind and stalk dimension (1 unless given)

    Raises:
        ValidationError: If the kind is unknown or ``n`` is not a positive integer
    """
    kind, _, argument = (text or "").strip().partition(":")
    if kind not in SHEAF_KINDS:
        raise ValidationError(
            f"--sheaf must be constant:<n>, edgeproj or twisted, got {text!r}", field="sheaf", code="unknown_sheaf"
        )
    if kind != "constant":
        if argument:
            raise ValidationError(f"sheaf {kind!r} takes no argument", field="sheaf", code="unexpected_argument")
        return kind, 1
    try:
        n = int(argument) if argument else 1
    except ValueError:
        raise ValidationError(f"constant sheaf dimension must be an integer, got {argument!r}",
                              field="sheaf", code="not_an_integer") from None
    if n < 1:
        raise ValidationError(f"constant sheaf dimension must be >= 1, got {n}", field="sheaf", code="range")
    return kind, n
