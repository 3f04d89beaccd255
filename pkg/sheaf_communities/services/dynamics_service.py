"""
Dynamics service: bounded confidence flow on a cellular sheaf.

The flow is

    dx_v/dt = sum over e = {u, v} of phi(|F_u x_u - F_v x_v|) F_v^T (F_u x_u - F_v x_v)

which in matrix form is ``-delta^T W delta x`` with ``W`` weighting each edge
block by phi of its norm. It is integrated with explicit Euler steps.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Optional, Tuple, Union

import numpy as np

from ..models import (
    BumpFunction,
    BumpKind,
    CellularSheaf,
    DomainError,
    EvolutionOutcome,
    EvolutionStatus,
    Graph,
    NumericalFailureError,
    OpinionState,
)
from .sheaf_service import coboundary

logger = logging.getLogger(__name__)

StateLike = Union[OpinionState, np.ndarray]
Observer = Callable[[float, np.ndarray], None]

DEFAULT_SEPARATION_TOLERANCE = 1e-9


def bump_eval(phi: BumpFunction, x: float) -> float:
    """Evaluate ``phi`` at a non-negative point.

    Raises:
        DomainError: If ``x`` is negative or NaN
    """
    if not x >= 0:
        raise DomainError(f"bump functions are defined on [0, inf), got {x!r}")
    return phi(x)


def _values(s: CellularSheaf, x: StateLike) -> np.ndarray:
    values = x.values if isinstance(x, OpinionState) else np.asarray(x, dtype=float).reshape(-1)
    if values.size != s.c0_dim:
        raise DomainError(f"state has {values.size} coordinates, sheaf has dim C0 = {s.c0_dim}")
    return values


def edge_norms(s: CellularSheaf, delta_x: np.ndarray) -> np.ndarray:
    """Euclidean norm of every edge block of a 1-cochain."""
    if s.graph.edge_count == 0:
        return np.zeros(0)
    width = s.uniform_edge_dim
    if width:
        return np.linalg.norm(delta_x.reshape(-1, width), axis=1)
    return np.sqrt(np.add.reduceat(np.square(delta_x), s.edge_offsets[:-1]))


def edge_difference(s: CellularSheaf, x: StateLike, e: int) -> float:
    """``|F_{u<e} x_u - F_{v<e} x_v|`` for edge ``e = (u, v)``."""
    values = _values(s, x)
    if not 0 <= e < s.graph.edge_count:
        raise DomainError(f"edge {e} outside [0, {s.graph.edge_count})")
    u, v = s.graph.edges[e]
    diff = s.restriction(u, e) @ values[s.vertex_slice(u)] - s.restriction(v, e) @ values[s.vertex_slice(v)]
    return float(np.linalg.norm(diff))


def _edge_weights(s: CellularSheaf, phi: BumpFunction, norms: np.ndarray) -> np.ndarray:
    weights = phi.evaluate(norms)
    width = s.uniform_edge_dim
    if width == 1:
        return weights
    return np.repeat(weights, s.edge_stalk_dims)


def _flow(delta: np.ndarray, weights: np.ndarray, delta_x: np.ndarray) -> np.ndarray:
    return -(delta.T @ (weights * delta_x))


def derivative(s: CellularSheaf, phi: BumpFunction, x: StateLike,
               delta: Optional[np.ndarray] = None) -> OpinionState:
    """Time derivative of the bounded confidence flow at ``x``.

    With ``constant_one`` this is the consensus flow ``-L x``.
    """
    values = _values(s, x)
    if delta is None:
        delta = coboundary(s)
    delta_x = delta @ values
    weights = _edge_weights(s, phi, edge_norms(s, delta_x))
    time = x.time if isinstance(x, OpinionState) else 0.0
    return OpinionState(_flow(delta, weights, delta_x), s.vertex_offsets, time)


def _validate_evolution(phi: BumpFunction, eps: float, t_max: float, dt: float) -> None:
    if not 0 < eps < phi.threshold:
        raise DomainError(f"eps must lie in (0, {phi.threshold}), got {eps!r}")
    if not 0 < dt < math.inf:
        raise DomainError(f"dt must be positive, got {dt!r}")
    if not 0 < t_max < math.inf:
        raise DomainError(f"t_max must be positive, got {t_max!r}")


def evolve(
    s: CellularSheaf,
    phi: BumpFunction,
    x0: StateLike,
    eps: float = 0.0033,
    t_max: float = 1000.0,
    dt: float = 0.01,
    separation_tolerance: float = DEFAULT_SEPARATION_TOLERANCE,
    observer: Optional[Observer] = None,
) -> EvolutionOutcome:
    """Integrate the flow until every edge is in consensus or separated.

    Before each Euler step every edge difference is checked: the run stops
    when each one is ``<= eps`` or ``>= threshold + separation_tolerance``.
    After ``round(t_max / dt)`` steps without stopping the run is aborted.

    Args:
        s: Sheaf the opinions live on
        phi: Bump function
        x0: Initial 0-cochain
        eps: Consensus tolerance in (0, threshold)
        t_max: Abort time
        dt: Euler step size
        separation_tolerance: Margin a difference must clear above the threshold
        observer: Called as ``observer(t, values)`` for every visited state

    Returns:
        Outcome with the final state and the consensus edges

    Raises:
        DomainError: If eps, t_max or dt are out of range, or x0 has the wrong size
        NumericalFailureError: If the state becomes non-finite
    """
    _validate_evolution(phi, eps, t_max, dt)
    values = np.array(_values(s, x0), dtype=float)
    if not np.all(np.isfinite(values)):
        raise NumericalFailureError("initial state is not finite", time=0.0)

    delta = coboundary(s)
    max_steps = int(round(t_max / dt))
    # constant_one never vanishes, so no difference is ever separated
    separated_from = (
        math.inf if phi.kind is BumpKind.CONSTANT_ONE else phi.threshold + separation_tolerance
    )

    with np.errstate(over="ignore", invalid="ignore"):
        return _integrate(s, phi, values, delta, eps, dt, max_steps, separated_from, observer)


def _integrate(
    s: CellularSheaf,
    phi: BumpFunction,
    values: np.ndarray,
    delta: np.ndarray,
    eps: float,
    dt: float,
    max_steps: int,
    separated_from: float,
    observer: Optional[Observer],
) -> EvolutionOutcome:
    step = 0
    while True:
        t = step * dt
        if observer is not None:
            observer(t, values.copy())

        delta_x = delta @ values
        norms = edge_norms(s, delta_x)
        if not np.all(np.isfinite(norms)):
            raise NumericalFailureError(f"edge differences overflowed at t={t:.4f}", time=t)
        consensus = norms <= eps
        if np.all(consensus | (norms >= separated_from)):
            logger.debug(f"converged after {step} steps (t={t:.2f})")
            return EvolutionOutcome(
                state=OpinionState(values, s.vertex_offsets, t),
                status=EvolutionStatus.CONVERGED,
                consensus_edges=frozenset(np.flatnonzero(consensus).tolist()),
                steps=step,
            )
        if step >= max_steps:
            logger.debug(f"aborted at t={t:.2f}: {int(np.count_nonzero(~consensus))} edges unsettled")
            return EvolutionOutcome(
                state=OpinionState(values, s.vertex_offsets, t),
                status=EvolutionStatus.ABORTED,
                consensus_edges=frozenset(np.flatnonzero(consensus).tolist()),
                steps=step,
            )

        weights = _edge_weights(s, phi, norms)
        values = values + dt * _flow(delta, weights, delta_x)
        step += 1
        if not np.all(np.isfinite(values)):
            raise NumericalFailureError(f"state became non-finite at t={step * dt:.4f}", time=step * dt)


def counterexample_closed_form(a0: float, b0: float, t: float) -> Tuple[float, float]:
    """Exact ``(a(t), b(t))`` on the counterexample network under phi1, threshold 1.

    The inner differences ``b - a`` decay to 0 while the middle difference
    ``1 + a - b`` approaches the threshold from below.

    Raises:
        DomainError: Unless ``1 + a0 > b0 > a0``
    """
    if not 1 + a0 > b0 > a0:
        raise DomainError(f"closed form needs 1 + a0 > b0 > a0, got a0={a0!r}, b0={b0!r}")
    c = math.log(1.0 / (b0 - a0) - 1.0)
    exponent = 2.0 * t + c
    # 1 / (e^z + 1) without overflow for large z
    gap = math.exp(-exponent) / (1.0 + math.exp(-exponent)) if exponent > 0 else 1.0 / (math.exp(exponent) + 1.0)
    return 0.5 * (a0 + b0 - gap), 0.5 * (a0 + b0 + gap)


def counterexample_network() -> Graph:
    """Six vertices holding ``a, a, b, 1+a, 1+b, 1+b`` on which constant-sheaf detection never settles.

    Edges: both ``a`` vertices to ``b``, ``b`` to ``1+a``, and ``1+a`` to both ``1+b``.
    """
    return Graph(vertex_count=6, edges=((0, 2), (1, 2), (2, 3), (3, 4), (3, 5)))


def counterexample_state(s: CellularSheaf, a0: float, b0: float) -> OpinionState:
    """Initial state ``[a0, a0, b0, 1+a0, 1+b0, 1+b0]`` for the counterexample network.

    Raises:
        DomainError: If ``s`` does not have six one-dimensional vertex stalks,
            or unless ``1 + a0 > b0 > a0``
    """
    if s.vertex_stalk_dims != (1,) * 6:
        raise DomainError("counterexample state needs six one-dimensional vertex stalks")
    if not 1 + a0 > b0 > a0:
        raise DomainError(f"counterexample needs 1 + a0 > b0 > a0, got a0={a0!r}, b0={b0!r}")
    values = np.array([a0, a0, b0, 1.0 + a0, 1.0 + b0, 1.0 + b0])
    return OpinionState(values, s.vertex_offsets, 0.0)
