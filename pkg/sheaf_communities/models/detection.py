"""
Domain models for community detection runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, NamedTuple, Optional, Tuple

from .dynamics import BumpFunction
from .enums import EvolutionStatus
from .errors import DomainError
from .graph import Partition


@dataclass(frozen=True)
class ConstantSheafParams:
    """Parameters of the constant-sheaf detection algorithm.

    Attributes:
        n: Stalk dimension of the constant sheaf
        d: Diameter of the ball initial opinions are drawn from
        phi: Bump function of the bounded confidence flow
        eps: Consensus tolerance, must lie in (0, phi.threshold)
        t_max: Time after which a run is aborted
        dt: Euler step size
        separation_tolerance: Margin above the threshold that counts as separated
    """

    n: int = 1
    d: float = 2.0
    phi: BumpFunction = BumpFunction()
    eps: float = 0.0033
    t_max: float = 1000.0
    dt: float = 0.01
    separation_tolerance: float = 1e-9

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.phi, BumpFunction):
            raise TypeError(f"phi must be BumpFunction, got {type(self.phi)}")
        if not _finite_positive(self.d):
            raise DomainError(f"d must be positive, got {self.d!r}")
        if not 0 < self.eps < self.phi.threshold:
            raise DomainError(f"eps must lie in (0, {self.phi.threshold}), got {self.eps!r}")
        if not _finite_positive(self.t_max):
            raise DomainError(f"t_max must be positive, got {self.t_max!r}")
        if not _finite_positive(self.dt):
            raise DomainError(f"dt must be positive, got {self.dt!r}")
        if not self.separation_tolerance >= 0:
            raise DomainError("separation_tolerance must be non-negative")

    @classmethod
    def from_config(cls, config: Any, **overrides: Any) -> ConstantSheafParams:
        """Build parameters from a DynamicsConfig, with keyword overrides."""
        values: Dict[str, Any] = {
            "eps": config.eps,
            "t_max": config.t_max,
            "dt": config.dt,
            "separation_tolerance": config.separation_tolerance,
            "phi": BumpFunction(threshold=config.threshold),
        }
        values.update(overrides)
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "d": self.d,
            "phi": str(self.phi),
            "threshold": self.phi.threshold,
            "eps": self.eps,
            "t_max": self.t_max,
            "dt": self.dt,
        }


def _finite_positive(value: float) -> bool:
    return isinstance(value, (int, float)) and 0 < value < math.inf


class SingletonMerge(NamedTuple):
    """One singleton moved into a neighboring cluster.

    ``target_cluster`` is the id in the partition given to singleton resolution.
    """

    vertex: int
    target_cluster: int
    gain: float


@dataclass(frozen=True)
class DetectionResult:
    """Outcome of one detection run.

    ``partition`` is ``None`` exactly when the run aborted.
    """

    status: EvolutionStatus
    partition: Optional[Partition] = None
    primary_partition: Optional[Partition] = None
    merges: Tuple[SingletonMerge, ...] = ()
    modularity: Optional[float] = None

    def __post_init__(self) -> None:
        if self.status is EvolutionStatus.CONVERGED and self.partition is None:
            raise ValueError("a converged result needs a partition")
        if self.status is EvolutionStatus.ABORTED and self.partition is not None:
            raise ValueError("an aborted result carries no partition")
        object.__setattr__(self, "merges", tuple(self.merges))

    @classmethod
    def aborted(cls) -> DetectionResult:
        return cls(status=EvolutionStatus.ABORTED)

    @property
    def converged(self) -> bool:
        return self.status is EvolutionStatus.CONVERGED

    @property
    def primary_cluster_count(self) -> Optional[int]:
        """Cluster count before singleton resolution."""
        return self.primary_partition.cluster_count if self.primary_partition else None

    @property
    def cluster_count(self) -> Optional[int]:
        return self.partition.cluster_count if self.partition else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": str(self.status),
            "clusters": self.partition.clusters() if self.partition else None,
            "primary_cluster_count": self.primary_cluster_count,
            "merges": [m._asdict() for m in self.merges],
            "modularity": self.modularity,
        }
