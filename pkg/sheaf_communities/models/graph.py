"""
Graph and partition domain models.

Both types are immutable value objects: they validate themselves on
construction and are safe to share between worker processes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .errors import GraphValidationError, VertexRangeError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with a fixed vertex order and oriented edges.

    The stored orientation of each edge only matters for sign conventions
    (coboundary, incidence matrix); all graph-theoretic quantities ignore it.
    """

    vertex_count: int
    edges: Tuple[Edge, ...] = ()
    _neighbors: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _incident: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Validate the simple-graph invariants and derive adjacency."""
        if not isinstance(self.vertex_count, (int, np.integer)) or self.vertex_count < 0:
            raise GraphValidationError(
                f"vertex_count must be a non-negative integer, got {self.vertex_count!r}"
            )
        object.__setattr__(self, "vertex_count", int(self.vertex_count))
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)

        seen = set()
        neighbors: List[List[int]] = [[] for _ in range(self.vertex_count)]
        incident: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for index, (u, v) in enumerate(edges):
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphValidationError(
                    f"edge {index} = ({u}, {v}) has an endpoint outside [0, {self.vertex_count})"
                )
            if u == v:
                raise GraphValidationError(f"edge {index} = ({u}, {v}) is a self-loop")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphValidationError(f"edge {index} = ({u}, {v}) is a duplicate")
            seen.add(key)
            neighbors[u].append(v)
            neighbors[v].append(u)
            incident[u].append(index)
            incident[v].append(index)

        object.__setattr__(self, "_neighbors", tuple(tuple(n) for n in neighbors))
        object.__setattr__(self, "_incident", tuple(tuple(i) for i in incident))

    @classmethod
    def from_pairs(cls, vertex_count: int, pairs: Iterable[Sequence[int]]) -> Graph:
        """Build a graph whose edges are oriented as (smaller id, larger id)."""
        edges = tuple((min(int(u), int(v)), max(int(u), int(v))) for u, v in pairs)
        return cls(vertex_count=vertex_count, edges=edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> np.ndarray:
        """Degree of every vertex as an integer array."""
        return np.fromiter((len(n) for n in self._neighbors), dtype=np.int64, count=self.vertex_count)

    @property
    def edge_array(self) -> np.ndarray:
        """Edges as an ``(E, 2)`` integer array in stored orientation."""
        if not self.edges:
            return np.zeros((0, 2), dtype=np.int64)
        return np.asarray(self.edges, dtype=np.int64)

    def check_vertex(self, v: int) -> int:
        """Return ``v`` as int or raise VertexRangeError."""
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.vertex_count:
            raise VertexRangeError(f"vertex {v!r} outside [0, {self.vertex_count})")
        return int(v)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._neighbors[self.check_vertex(v)]

    def incident_edges(self, v: int) -> Tuple[int, ...]:
        """Indices of the edges incident to ``v``, ascending."""
        return self._incident[self.check_vertex(v)]

    def isolated_vertices(self) -> List[int]:
        return [v for v, n in enumerate(self._neighbors) if not n]

    def with_flipped_edges(self, indices: Iterable[int]) -> Graph:
        """Return the same graph with the stored orientation of some edges reversed."""
        flip = set(int(i) for i in indices)
        edges = tuple((v, u) if i in flip else (u, v) for i, (u, v) in enumerate(self.edges))
        return Graph(vertex_count=self.vertex_count, edges=edges)

    def to_dict(self) -> Dict[str, object]:
        return {"vertex_count": self.vertex_count, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class Partition:
    """Assignment of every vertex to exactly one cluster.

    Cluster ids are contiguous from 0 and every id in range is used.
    """

    cluster_of: Tuple[int, ...]

    def __post_init__(self) -> None:
        labels = tuple(int(c) for c in self.cluster_of)
        object.__setattr__(self, "cluster_of", labels)
        if not labels:
            return
        if min(labels) < 0:
            raise GraphValidationError("cluster ids must be non-negative")
        used = set(labels)
        if used != set(range(max(labels) + 1)):
            raise GraphValidationError("cluster ids must be contiguous from 0 with no empty cluster")

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> Partition:
        """Relabel arbitrary cluster labels by first appearance in vertex order.

        The result is the canonical form: clusters are numbered in order of
        their smallest member.
        """
        mapping: Dict[int, int] = {}
        relabeled = []
        for label in labels:
            key = int(label)
            if key not in mapping:
                mapping[key] = len(mapping)
            relabeled.append(mapping[key])
        return cls(tuple(relabeled))

    @classmethod
    def single_cluster(cls, vertex_count: int) -> Partition:
        return cls((0,) * vertex_count)

    @classmethod
    def all_singletons(cls, vertex_count: int) -> Partition:
        return cls(tuple(range(vertex_count)))

    @property
    def vertex_count(self) -> int:
        return len(self.cluster_of)

    @property
    def cluster_count(self) -> int:
        return max(self.cluster_of) + 1 if self.cluster_of else 0

    @property
    def labels(self) -> np.ndarray:
        return np.asarray(self.cluster_of, dtype=np.int64)

    def clusters(self) -> List[List[int]]:
        """Member lists indexed by cluster id, each sorted ascending."""
        members: List[List[int]] = [[] for _ in range(self.cluster_count)]
        for v, c in enumerate(self.cluster_of):
            members[c].append(v)
        return members

    def sizes(self) -> List[int]:
        return np.bincount(self.labels, minlength=self.cluster_count).tolist()

    def singletons(self) -> List[int]:
        """Vertices that form a cluster on their own, ascending."""
        sizes = self.sizes()
        return [v for v, c in enumerate(self.cluster_of) if sizes[c] == 1]

    def canonical(self) -> Partition:
        return Partition.from_labels(self.cluster_of)

    def canonical_key(self) -> Tuple[int, ...]:
        """Label-invariant key: equal for partitions with the same clusters."""
        return self.canonical().cluster_of
