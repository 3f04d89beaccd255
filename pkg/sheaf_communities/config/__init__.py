#!/usr/bin/env python3
"""
Configuration package for sheaf community detection.

Contains configuration management, validation, and environment handling.
"""

from typing import Any, Dict

from .settings import (
    DynamicsConfig,
    load_config_from_env,
    parse_float,
    parse_int,
    setup_logging,
    validate_config,
)

__all__ = [
    "DynamicsConfig",
    "load_config_from_env",
    "validate_config",
    "setup_logging",
    "parse_int",
    "parse_float",
    "DEFAULT_CONFIG",
    "get_default_config",
]

# Configuration defaults
DEFAULT_CONFIG: Dict[str, Any] = DynamicsConfig().to_dict()


def get_default_config() -> Dict[str, Any]:
    """Get default configuration values.

    Returns:
        Dictionary of default configuration values
    """
    return DEFAULT_CONFIG.copy()

