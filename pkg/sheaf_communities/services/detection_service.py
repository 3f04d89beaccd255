"""
Detection service: the three community detection algorithms and singleton resolution.

Every algorithm produces a primary partition from a set of retained edges
and then moves each singleton into the neighboring cluster with the largest
modularity gain.
"""

from __future__ import annotations

import logging
import math
from typing import Iterable, List, Optional, Tuple

import numpy as np

from ..models import (
    BumpFunction,
    ConstantSheafParams,
    DetectionResult,
    DomainError,
    EvolutionStatus,
    Graph,
    Partition,
    SingletonMerge,
    UnresolvableSingletonError,
)
from .dynamics_service import DEFAULT_SEPARATION_TOLERANCE, evolve
from .graph_service import connected_components, edge_common_neighbors, edge_mask, modularity
from .sheaf_service import constant_sheaf, edge_projection_sheaf

logger = logging.getLogger(__name__)


def sample_ball(n: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    """Draw a point uniformly from the closed ball of ``radius`` in R^n.

    A Gaussian direction is scaled by ``radius * U**(1/n)``.

    Raises:
        DomainError: If ``n < 1`` or ``radius <= 0``
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"dimension must be a positive integer, got {n!r}")
    if not 0 < radius < math.inf:
        raise DomainError(f"radius must be positive, got {radius!r}")
    direction = rng.standard_normal(int(n))
    norm = np.linalg.norm(direction)
    while norm == 0.0:
        direction = rng.standard_normal(int(n))
        norm = np.linalg.norm(direction)
    return direction / norm * (radius * rng.random() ** (1.0 / n))


def _require_no_isolated(g: Graph) -> None:
    isolated = g.isolated_vertices()
    if isolated:
        raise UnresolvableSingletonError(
            f"vertex {isolated[0]} is isolated and cannot join any community", vertex=isolated[0]
        )


def resolve_singletons(g: Graph, p: Partition) -> Tuple[Partition, Tuple[SingletonMerge, ...]]:
    """Merge every single-vertex cluster into its best neighboring cluster.

    Singletons are visited in ascending vertex order. Vertex ``v`` joins the
    adjacent cluster ``C`` maximizing ``2|E| k_C - deg(v) * sum_{w in C} deg(w)``
    where ``k_C`` counts the edges from ``v`` into ``C``; ties go to the lowest
    cluster id. Degree sums are updated after each merge, and a merge never
    creates a new singleton, so one pass suffices.

    Args:
        g: Graph with at least one edge
        p: Partition of the vertices of ``g``

    Returns:
        The canonical resolved partition and the merges applied, with
        ``target_cluster`` given in the ids of ``p``

    Raises:
        DomainError: If ``g`` has no edges or ``p`` has the wrong size
        UnresolvableSingletonError: If ``g`` has an isolated vertex
    """
    if g.edge_count == 0:
        raise DomainError("singleton resolution needs at least one edge")
    if p.vertex_count != g.vertex_count:
        raise DomainError(f"partition covers {p.vertex_count} vertices, graph has {g.vertex_count}")
    _require_no_isolated(g)

    m = g.edge_count
    degrees = [int(d) for d in g.degrees]
    labels = list(p.cluster_of)
    sizes = list(p.sizes())
    degree_sums = [0] * p.cluster_count
    for v, c in enumerate(labels):
        degree_sums[c] += degrees[v]

    merges: List[SingletonMerge] = []
    for v in p.singletons():
        own = labels[v]
        if sizes[own] != 1:
            # an earlier singleton already joined this one
            continue

        links = {}
        for w in g.neighbors(v):
            links[labels[w]] = links.get(labels[w], 0) + 1

        best_cluster, best_score = -1, None
        for cluster in sorted(links):
            score = 2 * m * links[cluster] - degrees[v] * degree_sums[cluster]
            if best_score is None or score > best_score:
                best_cluster, best_score = cluster, score

        gain = best_score / (2.0 * m * m)
        labels[v] = best_cluster
        sizes[own] -= 1
        sizes[best_cluster] += 1
        degree_sums[own] -= degrees[v]
        degree_sums[best_cluster] += degrees[v]
        merges.append(SingletonMerge(vertex=v, target_cluster=best_cluster, gain=gain))
        logger.debug(f"singleton {v} -> cluster {best_cluster} (dQ={gain:.6f})")

    return Partition.from_labels(labels), tuple(merges)


def _result_from_edges(g: Graph, active_edges: Iterable[int] | np.ndarray) -> DetectionResult:
    primary = connected_components(g, active_edges)
    resolved, merges = resolve_singletons(g, primary)
    return DetectionResult(
        status=EvolutionStatus.CONVERGED,
        partition=resolved,
        primary_partition=primary,
        merges=merges,
        modularity=modularity(g, resolved),
    )


def detect_constant(g: Graph, params: ConstantSheafParams, rng: np.random.Generator) -> DetectionResult:
    """Community detection with the constant sheaf R^n.

    Each vertex starts at a uniform point of the ball of radius ``d / 2``. The
    flow runs until it settles; edges in consensus define the primary
    partition, whose singletons are then resolved.

    Raises:
        UnresolvableSingletonError: If ``g`` has an isolated vertex
        NumericalFailureError: If the evolution diverges
    """
    _require_no_isolated(g)
    sheaf = constant_sheaf(g, params.n)
    radius = params.d / 2.0
    x0 = np.concatenate([sample_ball(params.n, radius, rng) for _ in range(g.vertex_count)])
    outcome = evolve(
        sheaf,
        params.phi,
        x0,
        eps=params.eps,
        t_max=params.t_max,
        dt=params.dt,
        separation_tolerance=params.separation_tolerance,
    )
    if not outcome.converged:
        logger.debug(f"constant-sheaf run aborted at t={outcome.state.time:.2f}")
        return DetectionResult.aborted()
    return _result_from_edges(g, sorted(outcome.consensus_edges))


def edge_keep_probability(d: float, threshold: float = 1.0) -> float:
    """Probability that two uniform draws from an interval of width ``d`` differ by less than ``threshold``.

    Raises:
        DomainError: If ``d`` or ``threshold`` is not positive
    """
    if not 0 < d < math.inf:
        raise DomainError(f"d must be positive, got {d!r}")
    if not 0 < threshold < math.inf:
        raise DomainError(f"threshold must be positive, got {threshold!r}")
    if d <= threshold:
        return 1.0
    return 1.0 - (1.0 - threshold / d) ** 2


def detect_nonconstant(g: Graph, p: float, rng: np.random.Generator) -> DetectionResult:
    """Keep each edge independently with probability ``p``, then resolve singletons.

    Raises:
        DomainError: If ``p`` is outside [0, 1]
        UnresolvableSingletonError: If ``g`` has an isolated vertex
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    _require_no_isolated(g)
    keep = rng.random(g.edge_count) < p
    return _result_from_edges(g, keep)


def deterministic_edges(g: Graph, a: float, b: float) -> np.ndarray:
    """Mask of edges ``(u, v)`` with ``a * (deg u + deg v) < b + N_uv``."""
    edges = g.edge_array
    degrees = g.degrees
    lhs = a * (degrees[edges[:, 0]] + degrees[edges[:, 1]])
    return lhs < b + edge_common_neighbors(g)


def detect_deterministic(g: Graph, a: float, b: float) -> DetectionResult:
    """Group the ends of an edge when ``a * (deg u + deg v) < b + N_uv``.

    Raises:
        DomainError: If ``a`` is outside [0, 1] or ``b`` is not finite
        UnresolvableSingletonError: If ``g`` has an isolated vertex
    """
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"a must lie in [0, 1], got {a!r}")
    if not math.isfinite(b):
        raise DomainError(f"b must be finite, got {b!r}")
    _require_no_isolated(g)
    return _result_from_edges(g, deterministic_edges(g, a, b))


def detect_edge_projection(
    g: Graph,
    d: float,
    phi: Optional[BumpFunction] = None,
    rng: Optional[np.random.Generator] = None,
    eps: float = 0.0033,
    t_max: float = 1000.0,
    dt: float = 0.01,
    separation_tolerance: float = DEFAULT_SEPARATION_TOLERANCE,
) -> DetectionResult:
    """Bounded confidence detection on the edge-projection sheaf.

    Vertex ``v`` starts uniformly in the cube ``[-d/2, d/2]^deg(v)``. Every
    edge then evolves on its own, so an edge ends in consensus exactly when
    its initial difference is below the threshold. Keeping edges with
    ``edge_keep_probability(d)`` is the closed form of this construction.

    Raises:
        DomainError: If ``d`` is not positive
        UnresolvableSingletonError: If ``g`` has an isolated vertex
    """
    if not 0 < d < math.inf:
        raise DomainError(f"d must be positive, got {d!r}")
    _require_no_isolated(g)
    phi = phi or BumpFunction()
    rng = rng if rng is not None else np.random.default_rng()

    sheaf = edge_projection_sheaf(g)
    x0 = rng.uniform(-d / 2.0, d / 2.0, size=sheaf.c0_dim)
    outcome = evolve(sheaf, phi, x0, eps=eps, t_max=t_max, dt=dt,
                     separation_tolerance=separation_tolerance)
    if not outcome.converged:
        return DetectionResult.aborted()
    mask = edge_mask(g, sorted(outcome.consensus_edges))
    return _result_from_edges(g, mask)
