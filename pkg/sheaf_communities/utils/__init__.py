#!/usr/bin/env python3
"""
Utilities package for sheaf community detection.

Contains constants, input validators, text formatters and decorators.
"""

from .constants import DEFAULTS, EXIT_CODES, KARATE_CLUB_EDGES, PACKAGE_INFO
from .decorators import handle_cli_errors, log_duration, report_error
from .formatters import ResultFormatter, format_cohomology, format_modularity, format_partition
from .validators import (
    InputValidator,
    ValidationError,
    ValidationResult,
    parse_ab_grid,
    parse_float_list,
    parse_int_list,
    parse_sheaf_option,
)

__all__ = [
    # Constants
    "DEFAULTS",
    "EXIT_CODES",
    "KARATE_CLUB_EDGES",
    "PACKAGE_INFO",
    # Decorators
    "handle_cli_errors",
    "log_duration",
    "report_error",
    # Formatters
    "ResultFormatter",
    "format_partition",
    "format_modularity",
    "format_cohomology",
    # Validators
    "InputValidator",
    "ValidationError",
    "ValidationResult",
    "parse_float_list",
    "parse_int_list",
    "parse_ab_grid",
    "parse_sheaf_option",
]
