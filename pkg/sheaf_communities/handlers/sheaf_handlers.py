"""
Sheaf handlers: cohomology of the builtin sheaf families.
"""

from __future__ import annotations

from argparse import Namespace

from ..models import CellularSheaf
from ..services import cohomology_dims, constant_sheaf, edge_projection_sheaf, twisted_triangle_sheaf
from ..utils.formatters import format_cohomology
from ..utils.validators import parse_sheaf_option
from .base_handler import BaseHandler


class SheafHandlers(BaseHandler):
    """Handler for the ``cohomology`` command."""

    def cohomology_command(self, args: Namespace) -> int:
        """Print ``h0 = X, h1 = Y`` for the requested sheaf.

        ``twisted`` is defined on its own triangle and ignores ``--graph``.
        """
        self.log_handler_start("cohomology", args)
        kind, n = parse_sheaf_option(args.sheaf)
        self.check_output_path(args.out)
        sheaf = self.build_sheaf(kind, n, args)
        h0, h1 = cohomology_dims(sheaf, rank_tolerance_factor=self.config.rank_tolerance_factor)
        self.write_text(format_cohomology(h0, h1) + "\n", args.out)
        self.log_handler_end("cohomology")
        return self.exit_code(True)

    def build_sheaf(self, kind: str, n: int, args: Namespace) -> CellularSheaf:
        if kind == "twisted":
            return twisted_triangle_sheaf()
        graph = self.load_graph(args.graph, args.one_based)
        if kind == "edgeproj":
            return edge_projection_sheaf(graph)
        return constant_sheaf(graph, n)
