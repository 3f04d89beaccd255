#!/usr/bin/env python3
"""
Text formatters for sheaf community detection.

Command results go to stdout in a fixed plain-text layout, so these
formatters never depend on terminal width or locale.
"""

from typing import List, Optional, Sequence

from ..models import DetectionResult, Partition, StoppingComparison, SweepPointResult, SweepResult
from .constants import COHOMOLOGY_FORMAT, MODULARITY_FORMAT


def format_partition(partition: Partition) -> List[str]:
    """One ``cluster <id>: v1 v2 ...`` line per cluster, ids in canonical order."""
    return [
        f"cluster {cluster_id}: " + " ".join(str(v) for v in members)
        for cluster_id, members in enumerate(partition.canonical().clusters())
    ]


def format_modularity(q: float) -> str:
    return MODULARITY_FORMAT.format(q)


def format_cohomology(h0: int, h1: int) -> str:
    return COHOMOLOGY_FORMAT.format(h0, h1)


class ResultFormatter:
    """Formats command results as plain text."""

    def __init__(self, verbose: bool = False):
        """Initialize result formatter.

        Args:
            verbose: Whether to include primary cluster counts and merges
        """
        self.verbose = verbose

    def format_detection(self, result: DetectionResult) -> str:
        """Cluster lines, then ``Q = x.xxxxxx``, then the status line.

        An aborted result has only the status line.
        """
        lines: List[str] = []
        if result.partition is not None:
            lines.extend(format_partition(result.partition))
            lines.append(format_modularity(result.modularity))
            if self.verbose:
                lines.append(f"primary clusters: {result.primary_cluster_count}")
                for merge in result.merges:
                    lines.append(
                        f"merge: vertex {merge.vertex} -> cluster {merge.target_cluster} (dQ = {merge.gain:.6f})"
                    )
        lines.append(f"status: {result.status}")
        return "\n".join(lines) + "\n"

    def format_point(self, point: SweepPointResult, parameter_names: Sequence[str]) -> str:
        params = ", ".join(f"{name}={value}" for name, value in zip(parameter_names, point.parameters))
        if point.flagged:
            return f"{params}: all {point.run_count} runs aborted"
        return (
            f"{params}: clusters {point.mean_cluster_count:.3f} ± {point.cluster_count_error:.3f}, "
            f"Q {point.mean_modularity:.6f} ± {point.modularity_error:.6f}, "
            f"aborts {point.aborts}/{point.run_count}, pmax {point.pmax:.3f}"
        )

    def format_sweep_summary(self, result: SweepResult) -> str:
        """Best point and flagged points of a sweep."""
        best: Optional[SweepPointResult] = result.best_point()
        lines = [f"{len(result.points)} grid points, {result.config.runs_per_point} runs each"]
        if best is not None:
            lines.append("best: " + self.format_point(best, result.parameter_names))
        flagged = result.flagged_points
        if flagged:
            lines.append(f"flagged points: {len(flagged)}")
        return "\n".join(lines)

    def format_stopping_comparison(self, comparison: StoppingComparison) -> str:
        rate = comparison.agreement_rate
        rate_text = "n/a" if rate is None else f"{rate:.4f}"
        return (
            f"eps {comparison.coarse_eps} vs {comparison.precise_eps}: "
            f"{comparison.agreeing}/{comparison.compared} converged pairs agree "
            f"(rate {rate_text}), {comparison.aborted} of {comparison.runs} pairs aborted\n"
        )
