#!/usr/bin/env python3
"""
Configuration settings for sheaf community detection.

Handles environment variables, validation, and logging setup. Every value has
a default, so the tool runs without any configuration file.
"""

import logging
import math
import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)

ENV_PREFIX = "SHEAF_"
VALID_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class DynamicsConfig:
    """Numerical and runtime settings shared by all commands."""

    # Time evolution
    eps: float = 0.0033
    t_max: float = 1000.0
    dt: float = 0.01
    threshold: float = 1.0
    separation_tolerance: float = 1e-9

    # Linear algebra
    rank_tolerance_factor: float = 1e-9

    # Experiments
    workers: int = 1

    # Logging settings
    log_level: str = "WARNING"
    log_file: Optional[str] = None
    log_max_size: int = 10 * 1024 * 1024  # 10MB
    log_backup_count: int = 5

    def __post_init__(self) -> None:
        """Validate configuration after initialization."""
        self._validate_dynamics()
        self._validate_tolerances()
        self._validate_numeric_fields()
        self._validate_log_level()
        self._validate_paths()

    def _validate_dynamics(self) -> None:
        """Validate the integration parameters."""
        positive_fields = {
            "t_max": self.t_max,
            "dt": self.dt,
            "threshold": self.threshold,
        }
        for field_name, value in positive_fields.items():
            if not _is_number(value) or not 0 < value < math.inf:
                raise ValueError(f"{field_name} must be a positive finite number")

        if not _is_number(self.eps) or not 0 < self.eps < self.threshold:
            raise ValueError(f"eps must lie in (0, threshold={self.threshold})")

    def _validate_tolerances(self) -> None:
        """Validate numerical tolerances."""
        for field_name in ("separation_tolerance", "rank_tolerance_factor"):
            value = getattr(self, field_name)
            if not _is_number(value) or not 0 <= value < 1:
                raise ValueError(f"{field_name} must be a number in [0, 1)")

    def _validate_numeric_fields(self) -> None:
        """Validate integer configuration fields."""
        numeric_fields = {
            "workers": (self.workers, 1, 256),
            "log_max_size": (self.log_max_size, 1024 * 1024, 100 * 1024 * 1024),  # 1MB to 100MB
            "log_backup_count": (self.log_backup_count, 1, 20),
        }

        for field_name, (value, min_val, max_val) in numeric_fields.items():
            if not isinstance(value, int) or isinstance(value, bool) or not (min_val <= value <= max_val):
                raise ValueError(f"{field_name} must be an integer between {min_val} and {max_val}")

    def _validate_log_level(self) -> None:
        """Validate log level is supported."""
        if not isinstance(self.log_level, str) or self.log_level.upper() not in VALID_LOG_LEVELS:
            raise ValueError(f"log_level must be one of: {', '.join(VALID_LOG_LEVELS)}")

    def _validate_paths(self) -> None:
        """Validate file paths."""
        if self.log_file is not None and (not isinstance(self.log_file, str) or not self.log_file.strip()):
            raise ValueError("log_file must be a non-empty string when set")

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        return asdict(self)

    def get_summary(self) -> str:
        """Get formatted configuration summary."""
        lines = [
            f"eps: {self.eps}",
            f"t_max: {self.t_max}",
            f"dt: {self.dt}",
            f"threshold: {self.threshold}",
            f"workers: {self.workers}",
            f"log level: {self.log_level}",
        ]
        if self.log_file:
            lines.append(f"log file: {self.log_file}")
        return "\n".join(lines)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and not math.isnan(value)


def parse_int(env_var: str, default: int, min_val: int, max_val: int) -> int:
    """Read an integer variable, falling back to ``default`` with a warning."""
    raw = os.getenv(env_var)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except (ValueError, TypeError):
        logger.warning(f"Invalid {env_var} value, using default {default}")
        return default
    if min_val <= value <= max_val:
        return value
    logger.warning(f"Invalid {env_var} value {value}, using default {default}")
    return default


def parse_float(
    env_var: str,
    default: float,
    min_val: float,
    max_val: float = math.inf,
    include_min: bool = False,
) -> float:
    """Read a float variable from ``(min_val, max_val)``, or ``[min_val, max_val)`` with include_min."""
    raw = os.getenv(env_var)
    if raw is None or not raw.strip():
        return default
    try:
        value = float(raw)
    except (ValueError, TypeError):
        logger.warning(f"Invalid {env_var} value, using default {default}")
        return default
    lower_ok = value >= min_val if include_min else value > min_val
    if lower_ok and value < max_val:
        return value
    logger.warning(f"Invalid {env_var} value {value}, using default {default}")
    return default


def load_config_from_env(env_file: Optional[str] = None) -> DynamicsConfig:
    """Load configuration from ``SHEAF_*`` environment variables.

    Args:
        env_file: Optional path to .env file

    Returns:
        Loaded and validated configuration

    Raises:
        FileNotFoundError: If specified env_file doesn't exist
    """
    if env_file:
        env_path = Path(env_file)
        if not env_path.exists():
            raise FileNotFoundError(f"Environment file not found: {env_file}")

        from dotenv import load_dotenv
        load_dotenv(env_path)

    defaults = DynamicsConfig()
    threshold = parse_float(f"{ENV_PREFIX}THRESHOLD", defaults.threshold, 0.0)
    eps = parse_float(f"{ENV_PREFIX}EPS", defaults.eps, 0.0, threshold)
    if not eps < threshold:
        logger.warning(f"{ENV_PREFIX}EPS must be below the threshold {threshold}, using {threshold / 2}")
        eps = threshold / 2

    log_level = os.getenv(f"{ENV_PREFIX}LOG_LEVEL", defaults.log_level).strip().upper()
    if log_level not in VALID_LOG_LEVELS:
        logger.warning(f"Invalid {ENV_PREFIX}LOG_LEVEL value {log_level}, using default {defaults.log_level}")
        log_level = defaults.log_level

    log_file = os.getenv(f"{ENV_PREFIX}LOG_FILE", "").strip() or None

    return DynamicsConfig(
        eps=eps,
        t_max=parse_float(f"{ENV_PREFIX}T_MAX", defaults.t_max, 0.0),
        dt=parse_float(f"{ENV_PREFIX}DT", defaults.dt, 0.0),
        threshold=threshold,
        separation_tolerance=parse_float(
            f"{ENV_PREFIX}SEPARATION_TOLERANCE", defaults.separation_tolerance, 0.0, 1.0, include_min=True
        ),
        rank_tolerance_factor=parse_float(
            f"{ENV_PREFIX}RANK_TOLERANCE_FACTOR", defaults.rank_tolerance_factor, 0.0, 1.0
        ),
        workers=parse_int(f"{ENV_PREFIX}WORKERS", defaults.workers, 1, 256),
        log_level=log_level,
        log_file=log_file,
        log_max_size=parse_int(
            f"{ENV_PREFIX}LOG_MAX_SIZE", defaults.log_max_size, 1024 * 1024, 100 * 1024 * 1024
        ),
        log_backup_count=parse_int(f"{ENV_PREFIX}LOG_BACKUP_COUNT", defaults.log_backup_count, 1, 20),
    )


def setup_logging(config: DynamicsConfig) -> None:
    """Set up logging configuration.

    Console output goes to stderr through rich; stdout carries command results only.

    Args:
        config: Configuration containing logging settings
    """
    from logging.handlers import RotatingFileHandler

    from rich.console import Console
    from rich.logging import RichHandler

    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, config.log_level.upper(), logging.WARNING))

    # Clear any existing handlers
    root_logger.handlers.clear()

    console_handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=False,
    )
    console_handler.setFormatter(logging.Formatter("%(name)s - %(message)s"))
    root_logger.addHandler(console_handler)

    if config.log_file:
        file_handler = RotatingFileHandler(
            config.log_file,
            maxBytes=config.log_max_size,
            backupCount=config.log_backup_count,
            encoding="utf-8",
        )
        file_handler.setFormatter(
            logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        )
        root_logger.addHandler(file_handler)


def validate_config(config: DynamicsConfig) -> List[str]:
    """Validate configuration and return list of warnings.

    Args:
        config: Configuration to validate

    Returns:
        List of warning messages
    """
    warnings = []

    # Explicit Euler on a weighted graph Laplacian loses stability well before dt = 1
    if config.dt > 0.1:
        warnings.append(f"dt={config.dt} is large; explicit Euler steps may oscillate or diverge")

    if config.t_max / config.dt > 1e7:
        warnings.append("t_max / dt exceeds 1e7 steps; evolutions may be very slow")

    if not 0.1 * DynamicsConfig.eps <= config.eps <= 10 * DynamicsConfig.eps:
        warnings.append(f"eps={config.eps} is far from the default {DynamicsConfig.eps}")

    if config.separation_tolerance == 0:
        warnings.append("separation_tolerance is 0; flows converging onto the threshold may stop early")

    if config.workers > (os.cpu_count() or 1):
        warnings.append(f"workers={config.workers} exceeds the number of CPUs")

    if config.log_file:
        log_path = Path(config.log_file)
        if not log_path.parent.exists():
            warnings.append(f"Log directory does not exist: {log_path.parent}")

    return warnings
