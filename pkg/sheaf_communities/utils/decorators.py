#!/usr/bin/env python3
"""
Decorators for sheaf community detection.

Contains the timing decorator used around long computations and the
exception-to-exit-code mapping for command handlers.
"""

import functools
import logging
import time
from typing import Any, Callable, Optional, TypeVar

from rich.console import Console

from ..models import SheafCommunityError
from .constants import EXIT_CODES
from .validators import ValidationError

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

_stderr: Optional[Console] = None


def _error_console() -> Console:
    global _stderr
    if _stderr is None:
        _stderr = Console(stderr=True, highlight=False, soft_wrap=True)
    return _stderr


def report_error(message: str) -> None:
    """Print a one-line diagnostic to stderr."""
    _error_console().print(f"error: {message}", markup=False)


def log_duration(level: int = logging.INFO) -> Callable[[F], F]:
    """Decorator to log start, completion and execution time of a call.

    Args:
        level: Log level of the start and completion messages

    Returns:
        Decorator function
    """
    def decorator(func: F) -> F:
        func_logger = logging.getLogger(func.__module__)

        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            start_time = time.perf_counter()
            func_logger.log(level, f"{func.__name__} started")
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                execution_time = time.perf_counter() - start_time
                func_logger.error(f"{func.__name__} failed after {execution_time:.2f}s: {e}")
                raise
            execution_time = time.perf_counter() - start_time
            func_logger.log(
                level,
                f"{func.__name__} completed in {execution_time:.2f}s",
                extra={"function": func.__name__, "execution_time": execution_time},
            )
            return result

        return wrapper  # type: ignore[return-value]

    return decorator


def handle_cli_errors(func: Callable[..., int]) -> Callable[..., int]:
    """Decorator mapping exceptions raised by a command to exit codes.

    Usage problems exit with 1 and runtime failures with 2; the diagnostic
    goes to stderr.
    """
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> int:
        try:
            return func(*args, **kwargs)
        except ValidationError as e:
            report_error(e.message)
            return EXIT_CODES["USAGE_ERROR"]
        except SheafCommunityError as e:
            logger.debug(f"{func.__name__} failed ({e.error_type}): {e.message}")
            report_error(e.message)
            return EXIT_CODES["RUNTIME_ERROR"]
        except FileNotFoundError as e:
            report_error(str(e))
            return EXIT_CODES["USAGE_ERROR"]
        except OSError as e:
            report_error(str(e))
            return EXIT_CODES["RUNTIME_ERROR"]

    return wrapper
