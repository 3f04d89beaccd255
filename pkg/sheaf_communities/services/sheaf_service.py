"""
Sheaf service: sheaf constructors, coboundary, Laplacian and cohomology.

Cochains are laid out blockwise in ascending vertex (edge) index, then stalk
coordinate, as given by ``CellularSheaf.vertex_offsets`` / ``edge_offsets``.
"""

from __future__ import annotations

import logging
from typing import Dict, Optional, Tuple

import numpy as np

from ..models import CellularSheaf, DomainError, Graph

logger = logging.getLogger(__name__)

DEFAULT_RANK_TOLERANCE_FACTOR = 1e-9


def constant_sheaf(g: Graph, n: int = 1) -> CellularSheaf:
    """Constant sheaf R^n: every stalk is R^n, every restriction the identity.

    Raises:
        DomainError: If ``n < 1``
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"stalk dimension must be a positive integer, got {n!r}")
    identity = np.eye(int(n))
    restrictions = {(v, e): identity for e, pair in enumerate(g.edges) for v in pair}
    return CellularSheaf(
        graph=g,
        vertex_stalk_dims=(int(n),) * g.vertex_count,
        edge_stalk_dims=(int(n),) * g.edge_count,
        restrictions=restrictions,
    )


def edge_projection_sheaf(g: Graph) -> CellularSheaf:
    """Sheaf with stalk R^deg(v) at v and R on edges.

    The restriction for ``v ⊂ e`` picks the coordinate of ``e`` among the
    edges incident to ``v`` (ascending edge index).

    Raises:
        DomainError: If ``g`` has an isolated vertex
    """
    isolated = g.isolated_vertices()
    if isolated:
        raise DomainError(f"isolated vertex {isolated[0]} would need a zero-dimensional stalk")

    restrictions: Dict[Tuple[int, int], np.ndarray] = {}
    for v in range(g.vertex_count):
        incident = g.incident_edges(v)
        for position, e in enumerate(incident):
            row = np.zeros((1, len(incident)))
            row[0, position] = 1.0
            restrictions[(v, e)] = row
    return CellularSheaf(
        graph=g,
        vertex_stalk_dims=tuple(int(d) for d in g.degrees),
        edge_stalk_dims=(1,) * g.edge_count,
        restrictions=restrictions,
    )


def twisted_triangle_sheaf() -> CellularSheaf:
    """Triangle with R stalks, a -1 restriction at ``0 ⊂ (0, 1)`` and 1 elsewhere.

    Its cohomology vanishes although the underlying graph has a cycle.
    """
    g = Graph(vertex_count=3, edges=((0, 1), (1, 2), (0, 2)))
    restrictions = {(v, e): np.ones((1, 1)) for e, pair in enumerate(g.edges) for v in pair}
    restrictions[(0, 0)] = -np.ones((1, 1))
    return CellularSheaf(
        graph=g,
        vertex_stalk_dims=(1, 1, 1),
        edge_stalk_dims=(1, 1, 1),
        restrictions=restrictions,
    )


def signed_incidence(g: Graph) -> np.ndarray:
    """V x E incidence matrix: +1 where the vertex is the first stored endpoint, -1 for the second."""
    b = np.zeros((g.vertex_count, g.edge_count))
    if g.edge_count:
        columns = np.arange(g.edge_count)
        edges = g.edge_array
        b[edges[:, 0], columns] = 1.0
        b[edges[:, 1], columns] = -1.0
    return b


def coboundary(s: CellularSheaf) -> np.ndarray:
    """Dense coboundary matrix of shape ``(dim C1, dim C0)``.

    For ``e = (u, v)``: ``(dx)_e = F_{v<e} x_v - F_{u<e} x_u``.
    """
    delta = np.zeros((s.c1_dim, s.c0_dim))
    for e, (u, v) in enumerate(s.graph.edges):
        rows = s.edge_slice(e)
        delta[rows, s.vertex_slice(u)] = -s.restriction(u, e)
        delta[rows, s.vertex_slice(v)] = s.restriction(v, e)
    return delta


def sheaf_laplacian(s: CellularSheaf, delta: Optional[np.ndarray] = None) -> np.ndarray:
    """Sheaf Laplacian ``delta^T delta``, symmetric positive semidefinite."""
    if delta is None:
        delta = coboundary(s)
    return delta.T @ delta


def numerical_rank(matrix: np.ndarray, tolerance: Optional[float] = None,
                   tolerance_factor: float = DEFAULT_RANK_TOLERANCE_FACTOR) -> int:
    """Rank of ``matrix`` from its singular values.

    Args:
        matrix: 2-D array
        tolerance: Absolute cut-off; by default
            ``tolerance_factor * sigma_max * max(shape)``
        tolerance_factor: Relative factor for the default cut-off

    Raises:
        DomainError: If an explicit tolerance is not positive
    """
    if tolerance is not None and not tolerance > 0:
        raise DomainError(f"rank tolerance must be positive, got {tolerance!r}")
    array = np.asarray(matrix, dtype=float)
    if array.size == 0:
        return 0
    singular_values = np.linalg.svd(array, compute_uv=False)
    if tolerance is None:
        tolerance = tolerance_factor * singular_values.max(initial=0.0) * max(array.shape)
    return int(np.count_nonzero(singular_values > tolerance))


def cohomology_dims(s: CellularSheaf, rank_tolerance: Optional[float] = None,
                    rank_tolerance_factor: float = DEFAULT_RANK_TOLERANCE_FACTOR) -> Tuple[int, int]:
    """Dimensions ``(h0, h1)`` of the sheaf cohomology.

    ``h0 = dim C0 - rank delta`` and ``h1 = dim C1 - rank delta``.
    """
    rank = numerical_rank(coboundary(s), rank_tolerance, rank_tolerance_factor)
    h0, h1 = s.c0_dim - rank, s.c1_dim - rank
    logger.debug(f"cohomology: rank={rank}, h0={h0}, h1={h1}")
    return h0, h1
