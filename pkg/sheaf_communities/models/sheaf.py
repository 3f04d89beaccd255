"""
Cellular sheaf domain model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Tuple

import numpy as np

from .errors import DomainError
from .graph import Graph

Incidence = Tuple[int, int]  # (vertex, edge index)


@dataclass(frozen=True, eq=False)
class CellularSheaf:
    """Stalk dimensions and restriction maps over a graph.

    ``restrictions[(v, e)]`` is the ``n_e x n_v`` matrix of the restriction
    map from the stalk of vertex ``v`` to the stalk of edge ``e``.
    """

    graph: Graph
    vertex_stalk_dims: Tuple[int, ...]
    edge_stalk_dims: Tuple[int, ...]
    restrictions: Mapping[Incidence, np.ndarray]
    vertex_offsets: np.ndarray = field(init=False, repr=False, compare=False)
    edge_offsets: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Validate stalk dimensions and restriction shapes."""
        g = self.graph
        vdims = tuple(int(n) for n in self.vertex_stalk_dims)
        edims = tuple(int(n) for n in self.edge_stalk_dims)
        if len(vdims) != g.vertex_count:
            raise DomainError(f"expected {g.vertex_count} vertex stalks, got {len(vdims)}")
        if len(edims) != g.edge_count:
            raise DomainError(f"expected {g.edge_count} edge stalks, got {len(edims)}")
        if any(n <= 0 for n in vdims + edims):
            raise DomainError("stalk dimensions must be positive")

        expected = {(v, e) for e, pair in enumerate(g.edges) for v in pair}
        given = set(self.restrictions)
        if given != expected:
            missing = sorted(expected - given)
            extra = sorted(given - expected)
            raise DomainError(
                f"restrictions must cover exactly the incidences; missing={missing[:5]} extra={extra[:5]}"
            )

        frozen = {}
        for (v, e), matrix in self.restrictions.items():
            array = np.array(matrix, dtype=float, ndmin=2)
            if array.shape != (edims[e], vdims[v]):
                raise DomainError(
                    f"restriction ({v}, {e}) has shape {array.shape}, expected {(edims[e], vdims[v])}"
                )
            array.setflags(write=False)
            frozen[(v, e)] = array

        object.__setattr__(self, "vertex_stalk_dims", vdims)
        object.__setattr__(self, "edge_stalk_dims", edims)
        object.__setattr__(self, "restrictions", frozen)
        object.__setattr__(self, "vertex_offsets", np.concatenate(([0], np.cumsum(vdims, dtype=np.int64))))
        object.__setattr__(self, "edge_offsets", np.concatenate(([0], np.cumsum(edims, dtype=np.int64))))

    @property
    def c0_dim(self) -> int:
        """Dimension of the 0-cochains, the sum of vertex stalk dimensions."""
        return int(self.vertex_offsets[-1])

    @property
    def c1_dim(self) -> int:
        """Dimension of the 1-cochains, the sum of edge stalk dimensions."""
        return int(self.edge_offsets[-1])

    def restriction(self, v: int, e: int) -> np.ndarray:
        try:
            return self.restrictions[(v, e)]
        except KeyError:
            raise DomainError(f"vertex {v} is not incident to edge {e}") from None

    def vertex_slice(self, v: int) -> slice:
        return slice(int(self.vertex_offsets[v]), int(self.vertex_offsets[v + 1]))

    def edge_slice(self, e: int) -> slice:
        return slice(int(self.edge_offsets[e]), int(self.edge_offsets[e + 1]))

    @property
    def uniform_edge_dim(self) -> int:
        """Common edge stalk dimension, or 0 when edge stalks differ."""
        dims = set(self.edge_stalk_dims)
        return dims.pop() if len(dims) == 1 else 0
