"""
Domain models for bounded confidence opinion dynamics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import FrozenSet, List, Sequence, Union

import numpy as np

from .enums import BumpKind, EvolutionStatus
from .errors import DomainError

ArrayLike = Union[float, Sequence[float], np.ndarray]


@dataclass(frozen=True)
class BumpFunction:
    """Monotone decay profile phi: [0, inf) -> [0, 1] vanishing from ``threshold`` on.

    ``constant_one`` ignores the threshold and yields the consensus flow.
    """

    kind: BumpKind = BumpKind.PHI1
    threshold: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.kind, BumpKind):
            raise TypeError(f"kind must be BumpKind, got {type(self.kind)}")
        if not isinstance(self.threshold, (int, float)) or not self.threshold > 0 or math.isinf(self.threshold):
            raise DomainError(f"threshold must be a positive finite number, got {self.threshold!r}")

    @classmethod
    def from_string(cls, value: str, threshold: float = 1.0) -> BumpFunction:
        return cls(BumpKind.from_string(value), threshold)

    def evaluate(self, x: ArrayLike) -> np.ndarray:
        """Vectorised evaluation; ``x`` must be non-negative."""
        values = np.asarray(x, dtype=float)
        if self.kind is BumpKind.CONSTANT_ONE:
            return np.ones_like(values)

        u = values / self.threshold
        if self.kind is BumpKind.PHI1:
            inside = 1.0 - u
        elif self.kind is BumpKind.PHI2:
            inside = 1.0 - u * u
        elif self.kind is BumpKind.PHI3:
            inside = (1.0 - u) ** 2
        else:
            inside = 1.0 - u - np.sin(2.0 * np.pi * u) / 7.0
        return np.where(u < 1.0, inside, 0.0)

    def __call__(self, x: float) -> float:
        return float(self.evaluate(x))

    def __str__(self) -> str:
        return self.kind.value


@dataclass(frozen=True, eq=False)
class OpinionState:
    """Opinions of all vertices, stored as one flat 0-cochain vector.

    ``vertex_offsets`` has ``V + 1`` entries; the opinion of vertex ``v`` is
    ``values[vertex_offsets[v]:vertex_offsets[v + 1]]``.
    """

    values: np.ndarray
    vertex_offsets: np.ndarray
    time: float = 0.0

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float).reshape(-1)
        offsets = np.asarray(self.vertex_offsets, dtype=np.int64)
        if offsets.ndim != 1 or offsets.size == 0 or offsets[0] != 0 or offsets[-1] != values.size:
            raise DomainError(
                f"opinion vector of length {values.size} does not match the stalk layout"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "vertex_offsets", offsets)
        object.__setattr__(self, "time", float(self.time))

    @classmethod
    def from_vectors(cls, vectors: Sequence[ArrayLike], time: float = 0.0) -> OpinionState:
        parts = [np.atleast_1d(np.asarray(vec, dtype=float)) for vec in vectors]
        offsets = np.concatenate(([0], np.cumsum([p.size for p in parts], dtype=np.int64)))
        values = np.concatenate(parts) if parts else np.zeros(0)
        return cls(values=values, vertex_offsets=offsets, time=time)

    @property
    def vertex_count(self) -> int:
        return int(self.vertex_offsets.size - 1)

    def vertex_vector(self, v: int) -> np.ndarray:
        return self.values[self.vertex_offsets[v]:self.vertex_offsets[v + 1]]

    def vectors(self) -> List[np.ndarray]:
        return [self.vertex_vector(v) for v in range(self.vertex_count)]

    def with_values(self, values: np.ndarray, time: float) -> OpinionState:
        return OpinionState(values=values, vertex_offsets=self.vertex_offsets, time=time)


@dataclass(frozen=True, eq=False)
class EvolutionOutcome:
    """Result of integrating the bounded confidence flow."""

    state: OpinionState
    status: EvolutionStatus
    consensus_edges: FrozenSet[int] = field(default_factory=frozenset)
    steps: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.status, EvolutionStatus):
            raise TypeError(f"status must be EvolutionStatus, got {type(self.status)}")
        object.__setattr__(self, "consensus_edges", frozenset(int(e) for e in self.consensus_edges))

    @property
    def converged(self) -> bool:
        return self.status is EvolutionStatus.CONVERGED
