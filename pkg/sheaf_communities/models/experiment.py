"""
Domain models for Monte Carlo parameter sweeps.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

from ..config import DynamicsConfig
from .enums import Algorithm, EvolutionStatus
from .errors import DomainError
from .graph import Graph, Partition

logger = logging.getLogger(__name__)

GridPoint = Tuple[float, ...]


@dataclass(frozen=True)
class SweepConfig:
    """A parameter grid, a run count and a master seed for one algorithm.

    Use the ``constant``, ``nonconstant`` and ``deterministic`` builders
    rather than the constructor.
    """

    algorithm: Algorithm
    points: Tuple[GridPoint, ...]
    graph: Graph
    runs_per_point: int = 1
    master_seed: int = 0
    dynamics: DynamicsConfig = field(default_factory=DynamicsConfig)

    def __post_init__(self) -> None:
        if not isinstance(self.algorithm, Algorithm):
            raise TypeError(f"algorithm must be Algorithm, got {type(self.algorithm)}")
        points = tuple(tuple(p) for p in self.points)
        if not points:
            raise DomainError("sweep grid must not be empty")
        width = len(self.algorithm.parameter_names)
        if any(len(p) != width for p in points):
            raise DomainError(f"every grid point needs {width} values for {self.algorithm}")
        object.__setattr__(self, "points", points)

        if not isinstance(self.runs_per_point, int) or self.runs_per_point < 1:
            raise DomainError(f"runs_per_point must be >= 1, got {self.runs_per_point!r}")
        if self.algorithm is Algorithm.DETERMINISTIC and self.runs_per_point != 1:
            logger.debug("deterministic sweep: forcing runs_per_point to 1")
            object.__setattr__(self, "runs_per_point", 1)
        if not isinstance(self.master_seed, int) or self.master_seed < 0:
            raise DomainError(f"master_seed must be a non-negative integer, got {self.master_seed!r}")

    @property
    def parameter_names(self) -> Tuple[str, ...]:
        return self.algorithm.parameter_names

    @property
    def total_runs(self) -> int:
        return len(self.points) * self.runs_per_point

    @classmethod
    def constant(
        cls,
        graph: Graph,
        d: Iterable[float],
        phi: Iterable[int] = (1,),
        n: Iterable[int] = (1,),
        runs_per_point: int = 100,
        master_seed: int = 0,
        dynamics: Optional[DynamicsConfig] = None,
    ) -> SweepConfig:
        """Grid over d x phi x n, d varying slowest."""
        points = tuple(
            (float(dv), int(pv), int(nv))
            for dv, pv, nv in itertools.product(tuple(d), tuple(phi), tuple(n))
        )
        return cls(Algorithm.CONSTANT, points, graph, runs_per_point, master_seed,
                   dynamics or DynamicsConfig())

    @classmethod
    def nonconstant(
        cls,
        graph: Graph,
        p: Iterable[float],
        runs_per_point: int = 100,
        master_seed: int = 0,
        dynamics: Optional[DynamicsConfig] = None,
    ) -> SweepConfig:
        points = tuple((float(pv),) for pv in p)
        return cls(Algorithm.NONCONSTANT, points, graph, runs_per_point, master_seed,
                   dynamics or DynamicsConfig())

    @classmethod
    def deterministic(
        cls,
        graph: Graph,
        a: Iterable[float],
        b: Iterable[float],
        master_seed: int = 0,
        dynamics: Optional[DynamicsConfig] = None,
    ) -> SweepConfig:
        """Grid over a x b, a varying slowest; always one run per point."""
        points = tuple((float(av), float(bv)) for av, bv in itertools.product(tuple(a), tuple(b)))
        return cls(Algorithm.DETERMINISTIC, points, graph, 1, master_seed,
                   dynamics or DynamicsConfig())


@dataclass(frozen=True)
class RunRecord:
    """One detection run inside a sweep."""

    point_index: int
    run_index: int
    status: EvolutionStatus
    cluster_count: Optional[int] = None
    modularity: Optional[float] = None
    partition_key: Optional[Tuple[int, ...]] = None

    @property
    def aborted(self) -> bool:
        return self.status is EvolutionStatus.ABORTED


@dataclass(frozen=True)
class SweepPointResult:
    """Statistics of all runs at one grid point.

    Statistic fields are ``None`` when the point is flagged, i.e. every run aborted.
    """

    parameters: GridPoint
    runs: Tuple[RunRecord, ...]
    aborts: int
    mean_cluster_count: Optional[float] = None
    sigma_cluster_count: Optional[float] = None
    cluster_count_error: Optional[float] = None
    mean_modularity: Optional[float] = None
    sigma_modularity: Optional[float] = None
    modularity_error: Optional[float] = None
    modal_partition: Optional[Partition] = None
    pmax: Optional[float] = None

    @property
    def run_count(self) -> int:
        return len(self.runs)

    @property
    def flagged(self) -> bool:
        return self.aborts == self.run_count

    def to_row(self, parameter_names: Sequence[str]) -> Dict[str, Any]:
        """CSV row: grid parameters then the statistic columns."""
        row: Dict[str, Any] = dict(zip(parameter_names, self.parameters))
        row.update(
            num=self.mean_cluster_count,
            numerr=self.cluster_count_error,
            qav=self.mean_modularity,
            qaverr=self.modularity_error,
            aborts=self.aborts,
            pmax=self.pmax,
        )
        return row


@dataclass(frozen=True)
class SweepResult:
    """All point results of a sweep, in grid order."""

    config: SweepConfig
    points: Tuple[SweepPointResult, ...]

    @property
    def parameter_names(self) -> Tuple[str, ...]:
        return self.config.parameter_names

    @property
    def flagged_points(self) -> Tuple[SweepPointResult, ...]:
        return tuple(p for p in self.points if p.flagged)

    def best_point(self) -> Optional[SweepPointResult]:
        """Point with maximal mean modularity; the first one wins ties."""
        best: Optional[SweepPointResult] = None
        for point in self.points:
            if point.mean_modularity is None:
                continue
            if best is None or point.mean_modularity > best.mean_modularity:
                best = point
        return best


@dataclass(frozen=True)
class StoppingComparison:
    """Agreement between runs stopped at a coarse and at a precise tolerance.

    Both runs of a pair start from the same initial opinions.
    """

    runs: int
    coarse_eps: float
    precise_eps: float
    aborted: int
    agreeing: int

    @property
    def compared(self) -> int:
        """Pairs in which both runs converged."""
        return self.runs - self.aborted

    @property
    def agreement_rate(self) -> Optional[float]:
        return self.agreeing / self.compared if self.compared else None
