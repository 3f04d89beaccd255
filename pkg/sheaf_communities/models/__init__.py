"""
Models package for sheaf community detection.

This package contains the domain types, enums and the exception hierarchy.
All models are immutable and validate themselves on construction.

Usage:
    from sheaf_communities.models import Graph, Partition, CellularSheaf
    from sheaf_communities.models import BumpFunction, DetectionResult, SweepConfig
"""

from __future__ import annotations

from .detection import ConstantSheafParams, DetectionResult, SingletonMerge
from .dynamics import BumpFunction, EvolutionOutcome, OpinionState
from .enums import Algorithm, BumpKind, ErrorType, EvolutionStatus
from .errors import (
    DomainError,
    EdgeListParseError,
    ExperimentIOError,
    GraphValidationError,
    NumericalFailureError,
    SheafCommunityError,
    UnresolvableSingletonError,
    VertexRangeError,
)
from .experiment import RunRecord, StoppingComparison, SweepConfig, SweepPointResult, SweepResult
from .graph import Graph, Partition
from .sheaf import CellularSheaf

__all__ = [
    # Enums
    "Algorithm",
    "BumpKind",
    "ErrorType",
    "EvolutionStatus",
    # Errors
    "SheafCommunityError",
    "GraphValidationError",
    "EdgeListParseError",
    "VertexRangeError",
    "DomainError",
    "NumericalFailureError",
    "UnresolvableSingletonError",
    "ExperimentIOError",
    # Data classes
    "Graph",
    "Partition",
    "CellularSheaf",
    "BumpFunction",
    "OpinionState",
    "EvolutionOutcome",
    "ConstantSheafParams",
    "SingletonMerge",
    "DetectionResult",
    "SweepConfig",
    "RunRecord",
    "SweepPointResult",
    "SweepResult",
    "StoppingComparison",
]


def get_enum_values(enum_class) -> list:
    """Get all valid values for an enum class."""
    return [item.value for item in enum_class]
