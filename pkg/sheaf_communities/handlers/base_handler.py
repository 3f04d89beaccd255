"""
Base handler for command-line commands.

This module provides the base class with shared functionality for all command
handlers: graph loading, argument validation, output writing and logging.
"""

from __future__ import annotations

import contextlib
import logging
import sys
from argparse import Namespace
from pathlib import Path
from typing import Iterator, Optional, TextIO

import numpy as np

from ..config import DynamicsConfig
from ..models import Graph
from ..services import karate_club, load_graph_file
from ..utils.constants import EXIT_CODES, KARATE_GRAPH_NAME
from ..utils.formatters import ResultFormatter
from ..utils.validators import InputValidator, ValidationError, ValidationResult

logger = logging.getLogger(__name__)


class BaseHandler:
    """
    Base class for all command handlers.

    Each public command method takes the parsed arguments, validates all of
    them before touching any output file, and returns an exit code.
    """

    def __init__(
        self,
        config: DynamicsConfig,
        stdout: Optional[TextIO] = None,
        formatter: Optional[ResultFormatter] = None,
    ) -> None:
        """
        Initialize base handler.

        Args:
            config: Dynamics and runtime configuration
            stdout: Stream for command results; defaults to ``sys.stdout``
            formatter: Result formatter

        Raises:
            TypeError: If config has an incorrect type
        """
        if not isinstance(config, DynamicsConfig):
            raise TypeError(f"config must be DynamicsConfig, got {type(config)}")

        self.config = config
        self.stdout = stdout
        self.formatter = formatter or ResultFormatter()
        self.logger = logging.getLogger(self.__class__.__name__)

    def get_handler_name(self) -> str:
        return self.__class__.__name__

    # ---- Input ----

    def load_graph(self, source: str, one_based: bool = False) -> Graph:
        """Load the builtin karate graph or an edge-list file.

        Raises:
            ValidationError: If the file does not exist, cannot be read or is
                not UTF-8 text
        """
        if source == KARATE_GRAPH_NAME:
            return karate_club()
        path = Path(source)
        if not path.is_file():
            raise ValidationError(f"graph file not found: {source}", field="graph", code="not_found")
        try:
            graph = load_graph_file(path, one_based=one_based)
        except UnicodeDecodeError as e:
            raise ValidationError(f"graph file is not UTF-8 text: {source}", field="graph", code="encoding") from e
        except OSError as e:
            raise ValidationError(f"cannot read graph file {source}: {e}", field="graph", code="unreadable") from e
        self.logger.info(f"loaded {source}: {graph.vertex_count} vertices, {graph.edge_count} edges")
        return graph

    def make_rng(self, seed: int) -> np.random.Generator:
        self.require(InputValidator.validate_seed(seed), "seed")
        return np.random.default_rng(seed)

    def require(self, result: ValidationResult, field: str) -> None:
        """Log validation warnings and raise on the first error."""
        for warning in result.warnings:
            self.logger.warning(warning)
        result.raise_for_errors(field)

    def dynamics_overrides(self, args: Namespace) -> DynamicsConfig:
        """Configuration with ``--eps``, ``--tmax`` and ``--dt`` applied and validated."""
        eps = self.config.eps if getattr(args, "eps", None) is None else args.eps
        t_max = self.config.t_max if getattr(args, "tmax", None) is None else args.tmax
        dt = self.config.dt if getattr(args, "dt", None) is None else args.dt

        self.require(InputValidator.validate_eps(eps, self.config.threshold), "eps")
        self.require(InputValidator.validate_positive(t_max, "tmax"), "tmax")
        self.require(InputValidator.validate_positive(dt, "dt"), "dt")
        if dt > t_max:
            raise ValidationError(f"dt={dt} exceeds tmax={t_max}", field="dt", code="range")

        values = self.config.to_dict()
        values.update(eps=eps, t_max=t_max, dt=dt)
        return DynamicsConfig(**values)

    # ---- Output ----

    def check_output_path(self, path: Optional[str]) -> None:
        """Reject an ``--out`` path whose directory does not exist, before any work starts."""
        if path is None:
            return
        target = Path(path)
        if target.is_dir():
            raise ValidationError(f"--out is a directory: {path}", field="out", code="is_directory")
        if not target.resolve().parent.is_dir():
            raise ValidationError(f"output directory does not exist: {target.parent}", field="out", code="not_found")

    @contextlib.contextmanager
    def open_output(self, path: Optional[str]) -> Iterator[TextIO]:
        """Yield the ``--out`` file, or the result stream when no path is given."""
        if path is None:
            yield self.stdout if self.stdout is not None else sys.stdout
            return
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle

    def write_text(self, text: str, path: Optional[str] = None) -> None:
        with self.open_output(path) as stream:
            stream.write(text)

    # ---- Logging ----

    def log_handler_start(self, name: str, args: Namespace) -> None:
        self.logger.info(f"{name} started with {vars(args)}")

    def log_handler_end(self, name: str, *, success: bool = True) -> None:
        self.logger.info(f"{name} {'completed' if success else 'ended without a result'}")

    @staticmethod
    def exit_code(success: bool) -> int:
        return EXIT_CODES["SUCCESS"] if success else EXIT_CODES["RUNTIME_ERROR"]
