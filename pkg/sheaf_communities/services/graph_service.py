"""
Graph service: ingestion, degrees, components, modularity and neighborhoods.

All operations are pure functions over the immutable ``Graph`` and
``Partition`` models.
"""

from __future__ import annotations

import io
import logging
import re
from importlib import resources
from pathlib import Path
from typing import Iterable, List, Optional, TextIO, Union

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from ..models import (
    DomainError,
    EdgeListParseError,
    Graph,
    GraphValidationError,
    Partition,
)
from ..utils.constants import (
    EDGE_LIST_COMMENT,
    EDGE_LIST_HEADER,
    KARATE_CLUB_EDGES,
    KARATE_CLUB_VERTEX_COUNT,
)

logger = logging.getLogger(__name__)

VERTEX_ID_PATTERN = re.compile(r"[0-9]+")

EdgeSelection = Union[None, np.ndarray, Iterable[int]]


def load_edge_list(source: Union[str, TextIO], one_based: bool = False) -> Graph:
    """Parse an edge list into a graph.

    Each data line holds two whitespace-separated vertex ids. Blank lines and
    lines starting with ``#`` are skipped. An optional ``V <count>`` line fixes
    the vertex count, which is otherwise ``1 + max id``.

    Args:
        source: Edge-list text or a readable text stream
        one_based: Shift all ids down by one on ingestion

    Returns:
        Graph with edges in file order, oriented as written

    Raises:
        EdgeListParseError: If a line is malformed
        GraphValidationError: If the edges contain a self-loop or duplicate,
            or the header is smaller than the ids used
    """
    stream = io.StringIO(source) if isinstance(source, str) else source
    offset = 1 if one_based else 0
    header: Optional[int] = None
    edges: List[tuple] = []

    for line_number, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith(EDGE_LIST_COMMENT):
            continue
        tokens = line.split()
        if tokens[0] == EDGE_LIST_HEADER:
            if header is not None:
                raise EdgeListParseError("duplicate vertex-count header", line_number)
            if len(tokens) != 2 or not VERTEX_ID_PATTERN.fullmatch(tokens[1]):
                raise EdgeListParseError(f"malformed header {line!r}", line_number)
            header = int(tokens[1])
            continue
        if len(tokens) != 2 or not all(VERTEX_ID_PATTERN.fullmatch(t) for t in tokens):
            raise EdgeListParseError(f"expected two non-negative integers, got {line!r}", line_number)
        u, v = int(tokens[0]) - offset, int(tokens[1]) - offset
        if u < 0 or v < 0:
            raise EdgeListParseError("vertex id 0 is not allowed in a one-based edge list", line_number)
        edges.append((u, v))

    needed = 1 + max((max(e) for e in edges), default=-1)
    if header is not None and header < needed:
        raise GraphValidationError(f"header declares {header} vertices but ids reach {needed - 1}")
    vertex_count = max(header or 0, needed)
    graph = Graph(vertex_count=vertex_count, edges=tuple(edges))
    logger.debug(f"loaded edge list: {graph.vertex_count} vertices, {graph.edge_count} edges")
    return graph


def load_graph_file(path: Union[str, Path], one_based: bool = False) -> Graph:
    """Read an edge-list file from disk (UTF-8)."""
    with open(path, encoding="utf-8") as handle:
        return load_edge_list(handle, one_based=one_based)


def karate_club() -> Graph:
    """Zachary's karate club, 34 vertices and 78 edges, from builtin data."""
    return Graph(vertex_count=KARATE_CLUB_VERTEX_COUNT, edges=KARATE_CLUB_EDGES)


def karate_edge_list_text() -> str:
    """Contents of the bundled ``karate.edges`` data file."""
    return resources.files("sheaf_communities").joinpath("data/karate.edges").read_text(encoding="utf-8")


def degree(g: Graph, v: int) -> int:
    """Number of edges incident to ``v``.

    Raises:
        VertexRangeError: If ``v`` is not a vertex of ``g``
    """
    return len(g.neighbors(v))


def adjacency_matrix(g: Graph) -> sparse.csr_matrix:
    """Symmetric 0/1 adjacency matrix in CSR form."""
    edges = g.edge_array
    rows = np.concatenate((edges[:, 0], edges[:, 1]))
    cols = np.concatenate((edges[:, 1], edges[:, 0]))
    data = np.ones(rows.size, dtype=np.int64)
    return sparse.csr_matrix((data, (rows, cols)), shape=(g.vertex_count, g.vertex_count))


def edge_mask(g: Graph, active_edges: EdgeSelection) -> np.ndarray:
    """Normalize an edge selection to a boolean mask over ``g.edges``."""
    if active_edges is None:
        return np.ones(g.edge_count, dtype=bool)
    array = np.asarray(active_edges if isinstance(active_edges, np.ndarray) else list(active_edges))
    if array.dtype == bool:
        if array.shape != (g.edge_count,):
            raise DomainError(f"edge mask has shape {array.shape}, expected ({g.edge_count},)")
        return array
    mask = np.zeros(g.edge_count, dtype=bool)
    if array.size:
        indices = array.astype(np.int64)
        if indices.min() < 0 or indices.max() >= g.edge_count:
            raise DomainError(f"edge index outside [0, {g.edge_count})")
        mask[indices] = True
    return mask


def connected_components(g: Graph, active_edges: EdgeSelection = None) -> Partition:
    """Components of the subgraph keeping only the active edges.

    Args:
        g: Graph
        active_edges: Boolean mask, edge indices, or None for all edges

    Returns:
        Canonical partition; vertices touched by no active edge are singletons
    """
    if g.vertex_count == 0:
        return Partition(())
    mask = edge_mask(g, active_edges)
    kept = g.edge_array[mask]
    data = np.ones(kept.shape[0], dtype=np.int8)
    matrix = sparse.csr_matrix((data, (kept[:, 0], kept[:, 1])), shape=(g.vertex_count, g.vertex_count))
    _, labels = csgraph.connected_components(matrix, directed=False)
    return Partition.from_labels(labels)


def modularity(g: Graph, p: Partition) -> float:
    """Newman modularity of a partition.

    Raises:
        DomainError: If the graph has no edges or the partition size differs
    """
    if g.edge_count == 0:
        raise DomainError("modularity is undefined on a graph without edges")
    if p.vertex_count != g.vertex_count:
        raise DomainError(
            f"partition covers {p.vertex_count} vertices, graph has {g.vertex_count}"
        )

    m = g.edge_count
    labels = p.labels
    edges = g.edge_array
    first, second = labels[edges[:, 0]], labels[edges[:, 1]]
    internal = np.bincount(first[first == second], minlength=p.cluster_count)
    degree_sums = np.bincount(labels, weights=g.degrees, minlength=p.cluster_count)
    q = internal.sum() / m - np.square(degree_sums / (2.0 * m)).sum()
    return float(q)


def common_neighbors(g: Graph, u: int, v: int) -> int:
    """Number of vertices adjacent to both ``u`` and ``v``.

    Raises:
        VertexRangeError: If either vertex is invalid
        DomainError: If ``u == v``
    """
    nu, nv = g.neighbors(u), g.neighbors(v)
    if u == v:
        raise DomainError("common_neighbors needs two distinct vertices")
    return len(set(nu).intersection(nv))


def edge_common_neighbors(g: Graph) -> np.ndarray:
    """Common-neighbor count of the endpoints of every edge, in edge order."""
    if g.edge_count == 0:
        return np.zeros(0, dtype=np.int64)
    a = adjacency_matrix(g)
    paths = a @ a
    edges = g.edge_array
    return np.asarray(paths[edges[:, 0], edges[:, 1]]).ravel().astype(np.int64)
