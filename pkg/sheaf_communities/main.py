#!/usr/bin/env python3
"""
Main entry point for sheaf community detection.

Parses the command line, loads configuration, sets up logging and dispatches
to the command handlers. Results go to stdout (or ``--out``), diagnostics to
stderr.
"""

import argparse
import dataclasses
import logging
import sys
from typing import Callable, Dict, NoReturn, Optional, Sequence, TextIO

from .config import DynamicsConfig, load_config_from_env, setup_logging, validate_config
from .config.settings import VALID_LOG_LEVELS
from .handlers import DetectionHandlers, ExperimentHandlers, SheafHandlers
from .models import Algorithm, get_enum_values
from .utils.constants import DEFAULTS, EXIT_CODES, KARATE_GRAPH_NAME, PACKAGE_INFO, PHI_CHOICES
from .utils.decorators import handle_cli_errors
from .utils.validators import ValidationError

logger = logging.getLogger(__name__)

Command = Callable[[argparse.Namespace], int]


class CliArgumentParser(argparse.ArgumentParser):
    """Argument parser that raises ValidationError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise ValidationError(f"{self.prog}: {message}", code="usage")


def _common_options() -> argparse.ArgumentParser:
    common = CliArgumentParser(add_help=False)
    common.add_argument("--graph", default=KARATE_GRAPH_NAME,
                        help="edge-list file, or 'karate' for the builtin graph (default)")
    common.add_argument("--one-based", action="store_true", help="edge-list ids start at 1")
    common.add_argument("--seed", type=int, default=DEFAULTS["SEED"], help="random seed (default 0)")
    common.add_argument("--out", default=None, help="write results to this file instead of stdout")
    common.add_argument("--env-file", default=None, help="load SHEAF_* settings from a .env file")
    common.add_argument("--log-level", default=None, type=str.upper, choices=VALID_LOG_LEVELS)
    common.add_argument("--workers", type=int, default=None, help="worker processes for sweeps")
    common.add_argument("--verbose", action="store_true", help="also print primary clusters and merges")
    return common


def _dynamics_options() -> argparse.ArgumentParser:
    dynamics = CliArgumentParser(add_help=False)
    dynamics.add_argument("--eps", type=float, default=None, help="consensus tolerance")
    dynamics.add_argument("--tmax", type=float, default=None, help="abort time")
    dynamics.add_argument("--dt", type=float, default=None, help="Euler step size")
    return dynamics


def _constant_options() -> argparse.ArgumentParser:
    constant = CliArgumentParser(add_help=False)
    constant.add_argument("--n", type=int, default=DEFAULTS["N"], help="stalk dimension")
    constant.add_argument("--d", type=float, default=DEFAULTS["D"], help="initial ball diameter")
    constant.add_argument("--phi", type=int, default=DEFAULTS["PHI"], choices=PHI_CHOICES, help="bump function")
    return constant


def build_parser() -> CliArgumentParser:
    """Build the command-line parser with all subcommands."""
    parser = CliArgumentParser(
        prog="sheaf-communities",
        description=PACKAGE_INFO["DESCRIPTION"],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {PACKAGE_INFO['VERSION']}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=CliArgumentParser)
    subparsers.required = True

    common, dynamics, constant = _common_options(), _dynamics_options(), _constant_options()

    subparsers.add_parser("constant", parents=[common, constant, dynamics],
                          help="bounded confidence detection on the constant sheaf")

    nonconstant = subparsers.add_parser("nonconstant", parents=[common],
                                        help="detection keeping each edge with probability p")
    nonconstant.add_argument("--p", type=float, default=DEFAULTS["P"], help="edge keep probability")

    deterministic = subparsers.add_parser("deterministic", parents=[common],
                                          help="detection from degrees and common neighbors")
    deterministic.add_argument("--a", type=float, default=DEFAULTS["A"], help="degree weight in [0, 1]")
    deterministic.add_argument("--b", type=float, default=DEFAULTS["B"], help="offset")

    sweep = subparsers.add_parser("sweep", parents=[common, dynamics], help="Monte Carlo parameter sweep to CSV")
    sweep.add_argument("--algo", required=True, choices=get_enum_values(Algorithm))
    sweep.add_argument("--runs", type=int, default=None, help="runs per grid point (default 100)")
    sweep.add_argument("--d-grid", default=None, help="comma list of d values")
    sweep.add_argument("--phi-grid", default=None, help="comma list of bump indices")
    sweep.add_argument("--n-grid", default=None, help="comma list of stalk dimensions")
    sweep.add_argument("--p-grid", default=None, help="comma list of p values")
    sweep.add_argument("--ab-grid", default=None, help="A_LIST:B_LIST")

    cohomology = subparsers.add_parser("cohomology", parents=[common], help="sheaf cohomology dimensions")
    cohomology.add_argument("--sheaf", required=True, help="constant:<n>, edgeproj or twisted")

    compare = subparsers.add_parser("compare-eps", parents=[common, constant, dynamics],
                                    help="agreement of partitions under a finer consensus tolerance")
    compare.add_argument("--precise-eps", type=float, default=DEFAULTS["PRECISE_EPS"])
    compare.add_argument("--runs", type=int, default=DEFAULTS["RUNS"])

    return parser


class SheafCommunityApp:
    """Command-line application wiring configuration, logging and handlers."""

    def __init__(self, config: DynamicsConfig, stdout: Optional[TextIO] = None, verbose: bool = False) -> None:
        """Initialize the application.

        Args:
            config: Runtime configuration
            stdout: Stream for command results
            verbose: Whether detection output lists merges
        """
        if not isinstance(config, DynamicsConfig):
            raise TypeError("config must be a DynamicsConfig instance")

        self.config = config
        self.detection_handlers = DetectionHandlers(config, stdout)
        self.experiment_handlers = ExperimentHandlers(config, stdout)
        self.sheaf_handlers = SheafHandlers(config, stdout)
        if verbose:
            for handler in (self.detection_handlers, self.experiment_handlers, self.sheaf_handlers):
                handler.formatter.verbose = True

    def commands(self) -> Dict[str, Command]:
        return {
            "constant": self.detection_handlers.constant_command,
            "nonconstant": self.detection_handlers.nonconstant_command,
            "deterministic": self.detection_handlers.deterministic_command,
            "sweep": self.experiment_handlers.sweep_command,
            "cohomology": self.sheaf_handlers.cohomology_command,
            "compare-eps": self.experiment_handlers.compare_command,
        }

    def dispatch(self, args: argparse.Namespace) -> int:
        return self.commands()[args.command](args)


def load_runtime_config(args: argparse.Namespace) -> DynamicsConfig:
    """Configuration from the environment with command-line overrides."""
    config = load_config_from_env(args.env_file)
    overrides = {}
    if args.log_level:
        overrides["log_level"] = args.log_level
    if args.workers is not None:
        overrides["workers"] = args.workers
    try:
        return dataclasses.replace(config, **overrides) if overrides else config
    except ValueError as e:
        raise ValidationError(str(e), code="invalid_option") from e


@handle_cli_errors
def _run(argv: Sequence[str], stdout: Optional[TextIO], configure_logging: bool) -> int:
    args = build_parser().parse_args(list(argv))
    config = load_runtime_config(args)
    if configure_logging:
        setup_logging(config)
    logger.debug(f"configuration:\n{config.get_summary()}")
    for warning in validate_config(config):
        logger.warning(warning)

    app = SheafCommunityApp(config, stdout, verbose=args.verbose)
    return app.dispatch(args)


def run_cli(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None,
            configure_logging: bool = True) -> int:
    """Run the command line and return the exit status.

    Args:
        argv: Arguments without the program name; defaults to ``sys.argv[1:]``
        stdout: Stream for command results; defaults to ``sys.stdout``
        configure_logging: Whether to install the stderr and file log handlers

    Returns:
        0 on success, 1 on a usage error, 2 on a runtime failure or abort
    """
    try:
        return _run(sys.argv[1:] if argv is None else argv, stdout, configure_logging)
    except SystemExit as e:
        # --help and --version
        return e.code if isinstance(e.code, int) else EXIT_CODES["SUCCESS"]
    except KeyboardInterrupt:
        logger.warning("interrupted")
        return EXIT_CODES["RUNTIME_ERROR"]


def main() -> NoReturn:
    """Console-script entry point."""
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
