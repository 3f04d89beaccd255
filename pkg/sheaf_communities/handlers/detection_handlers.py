"""
Detection handlers: single runs of the three community detection algorithms.
"""

from __future__ import annotations

import logging
from argparse import Namespace

from ..models import BumpFunction, BumpKind, ConstantSheafParams, DetectionResult
from ..services import detect_constant, detect_deterministic, detect_nonconstant
from ..utils.validators import InputValidator
from .base_handler import BaseHandler

logger = logging.getLogger(__name__)


class DetectionHandlers(BaseHandler):
    """Handlers for the ``constant``, ``nonconstant`` and ``deterministic`` commands."""

    def constant_command(self, args: Namespace) -> int:
        """Run constant-sheaf detection once.

        Returns:
            0 on convergence, 2 when the evolution aborted
        """
        self.log_handler_start("constant", args)
        self.require(InputValidator.validate_count(args.n, "n"), "n")
        self.require(InputValidator.validate_positive(args.d, "d"), "d")
        self.require(InputValidator.validate_phi_index(args.phi), "phi")
        dynamics = self.dynamics_overrides(args)
        rng = self.make_rng(args.seed)
        self.check_output_path(args.out)
        graph = self.load_graph(args.graph, args.one_based)

        params = ConstantSheafParams.from_config(
            dynamics,
            n=args.n,
            d=args.d,
            phi=BumpFunction(BumpKind.from_string(str(args.phi)), dynamics.threshold),
        )
        return self._emit(detect_constant(graph, params, rng), args, "constant")

    def nonconstant_command(self, args: Namespace) -> int:
        """Run random edge-keeping detection once."""
        self.log_handler_start("nonconstant", args)
        self.require(InputValidator.validate_probability(args.p, "p"), "p")
        rng = self.make_rng(args.seed)
        self.check_output_path(args.out)
        graph = self.load_graph(args.graph, args.one_based)
        return self._emit(detect_nonconstant(graph, args.p, rng), args, "nonconstant")

    def deterministic_command(self, args: Namespace) -> int:
        """Run deterministic detection; ``--seed`` is accepted and ignored."""
        self.log_handler_start("deterministic", args)
        self.require(InputValidator.validate_range(args.a, "a", 0.0, 1.0), "a")
        self.require(InputValidator.validate_range(args.b, "b"), "b")
        self.check_output_path(args.out)
        graph = self.load_graph(args.graph, args.one_based)
        return self._emit(detect_deterministic(graph, args.a, args.b), args, "deterministic")

    def _emit(self, result: DetectionResult, args: Namespace, name: str) -> int:
        self.write_text(self.formatter.format_detection(result), args.out)
        if not result.converged:
            self.logger.warning(f"{name}: evolution aborted before settling")
        self.log_handler_end(name, success=result.converged)
        return self.exit_code(result.converged)
