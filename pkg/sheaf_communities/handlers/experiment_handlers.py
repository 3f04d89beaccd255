"""
Experiment handlers: parameter sweeps and stopping-criterion comparisons.
"""

from __future__ import annotations

import sys
from argparse import Namespace
from typing import Tuple

from ..models import Algorithm, BumpFunction, BumpKind, ConstantSheafParams, SweepConfig
from ..services import compare_stopping_criteria, run_sweep, write_csv
from ..utils.constants import (
    DEFAULTS,
    DEFAULT_A_GRID,
    DEFAULT_B_GRID,
    DEFAULT_D_GRID,
    DEFAULT_N_GRID,
    DEFAULT_P_GRID,
    DEFAULT_PHI_GRID,
)
from ..utils.validators import (
    InputValidator,
    ValidationError,
    parse_ab_grid,
    parse_float_list,
    parse_int_list,
)
from .base_handler import BaseHandler


class ExperimentHandlers(BaseHandler):
    """Handlers for the ``sweep`` and ``compare-eps`` commands."""

    def sweep_command(self, args: Namespace) -> int:
        """Run a Monte Carlo sweep and write its CSV to ``--out`` or stdout."""
        self.log_handler_start("sweep", args)
        cfg = self.build_sweep_config(args)
        self.check_output_path(args.out)

        result = run_sweep(cfg, workers=args.workers)
        if args.out is None:
            write_csv(result, self.stdout if self.stdout is not None else sys.stdout)
        else:
            write_csv(result, args.out)
        self.logger.info(self.formatter.format_sweep_summary(result))
        self.log_handler_end("sweep")
        return self.exit_code(True)

    def build_sweep_config(self, args: Namespace) -> SweepConfig:
        """Validate every sweep argument and assemble the configuration.

        Raises:
            ValidationError: If a grid or count is invalid, or a grid flag
                does not belong to the chosen algorithm
        """
        algorithm = Algorithm(args.algo)
        self._reject_foreign_grids(algorithm, args)
        runs = DEFAULTS["RUNS"] if args.runs is None else args.runs
        self.require(InputValidator.validate_count(runs, "runs"), "runs")
        self.require(InputValidator.validate_seed(args.seed), "seed")
        if args.workers is not None:
            self.require(InputValidator.validate_count(args.workers, "workers"), "workers")
        dynamics = self.dynamics_overrides(args)
        graph = self.load_graph(args.graph, args.one_based)

        if algorithm is Algorithm.CONSTANT:
            d_grid = self._grid(args.d_grid, DEFAULT_D_GRID, "d grid")
            phi_grid = parse_int_list(args.phi_grid, "phi grid") if args.phi_grid else DEFAULT_PHI_GRID
            n_grid = parse_int_list(args.n_grid, "n grid") if args.n_grid else DEFAULT_N_GRID
            for d in d_grid:
                self.require(InputValidator.validate_positive(d, "d"), "d_grid")
            for phi in phi_grid:
                self.require(InputValidator.validate_phi_index(phi), "phi_grid")
            for n in n_grid:
                self.require(InputValidator.validate_count(n, "n"), "n_grid")
            return SweepConfig.constant(graph, d_grid, phi_grid, n_grid, runs, args.seed, dynamics)

        if algorithm is Algorithm.NONCONSTANT:
            p_grid = self._grid(args.p_grid, DEFAULT_P_GRID, "p grid")
            for p in p_grid:
                self.require(InputValidator.validate_probability(p), "p_grid")
            return SweepConfig.nonconstant(graph, p_grid, runs, args.seed, dynamics)

        a_grid, b_grid = parse_ab_grid(args.ab_grid) if args.ab_grid else (DEFAULT_A_GRID, DEFAULT_B_GRID)
        for a in a_grid:
            self.require(InputValidator.validate_range(a, "a", 0.0, 1.0), "ab_grid")
        if args.runs is not None and args.runs != 1:
            self.logger.warning("deterministic sweeps always use one run per point")
        return SweepConfig.deterministic(graph, a_grid, b_grid, args.seed, dynamics)

    def compare_command(self, args: Namespace) -> int:
        """Compare partitions found with the configured eps and a finer one."""
        self.log_handler_start("compare-eps", args)
        self.require(InputValidator.validate_count(args.n, "n"), "n")
        self.require(InputValidator.validate_positive(args.d, "d"), "d")
        self.require(InputValidator.validate_phi_index(args.phi), "phi")
        self.require(InputValidator.validate_count(args.runs, "runs"), "runs")
        self.require(InputValidator.validate_seed(args.seed), "seed")
        dynamics = self.dynamics_overrides(args)
        self.require(InputValidator.validate_eps(args.precise_eps, dynamics.threshold), "precise_eps")
        self.check_output_path(args.out)
        graph = self.load_graph(args.graph, args.one_based)

        params = ConstantSheafParams.from_config(
            dynamics,
            n=args.n,
            d=args.d,
            phi=BumpFunction(BumpKind.from_string(str(args.phi)), dynamics.threshold),
        )
        comparison = compare_stopping_criteria(graph, params, args.precise_eps, args.runs, args.seed)
        self.write_text(self.formatter.format_stopping_comparison(comparison), args.out)
        self.log_handler_end("compare-eps")
        return self.exit_code(True)

    @staticmethod
    def _grid(text: str, default: Tuple[float, ...], name: str) -> Tuple[float, ...]:
        return parse_float_list(text, name) if text else default

    @staticmethod
    def _reject_foreign_grids(algorithm: Algorithm, args: Namespace) -> None:
        allowed = {
            Algorithm.CONSTANT: {"d_grid", "phi_grid", "n_grid"},
            Algorithm.NONCONSTANT: {"p_grid"},
            Algorithm.DETERMINISTIC: {"ab_grid"},
        }[algorithm]
        for flag in ("d_grid", "phi_grid", "n_grid", "p_grid", "ab_grid"):
            if getattr(args, flag, None) and flag not in allowed:
                option = "--" + flag.replace("_", "-")
                raise ValidationError(f"{option} does not apply to --algo {algorithm}", field=flag, code="unexpected")
