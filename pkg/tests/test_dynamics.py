#!/usr/bin/env python3
"""
Tests for the dynamics service: bump functions, edge differences,
the bounded confidence derivative and Euler time evolution.
"""

import math
from typing import List, Tuple

import numpy as np
import pytest

from sheaf_communities.models import (
    BumpFunction,
    BumpKind,
    CellularSheaf,
    DomainError,
    EvolutionStatus,
    Graph,
    NumericalFailureError,
    OpinionState,
)
from sheaf_communities.services import (
    bump_eval,
    constant_sheaf,
    counterexample_closed_form,
    counterexample_network,
    counterexample_state,
    derivative,
    edge_difference,
    edge_projection_sheaf,
    evolve,
    sheaf_laplacian,
)


def record_trajectory(trajectory: List[Tuple[float, np.ndarray]]):
    def observer(t: float, values: np.ndarray) -> None:
        trajectory.append((t, values))
    return observer


@pytest.mark.unit
class TestBumpEval:
    """Test cases for bump function evaluation."""

    def test_phi1(self) -> None:
        assert bump_eval(BumpFunction(BumpKind.PHI1), 0.5) == pytest.approx(0.5)

    def test_phi2(self) -> None:
        assert bump_eval(BumpFunction(BumpKind.PHI2), 0.5) == pytest.approx(0.75)

    def test_phi3_vanishes_at_threshold(self) -> None:
        assert bump_eval(BumpFunction(BumpKind.PHI3), 1.0) == 0.0

    def test_phi4(self) -> None:
        assert bump_eval(BumpFunction(BumpKind.PHI4), 0.25) == pytest.approx(0.75 - 1.0 / 7.0, abs=1e-9)

    def test_constant_one(self) -> None:
        phi = BumpFunction(BumpKind.CONSTANT_ONE)
        assert bump_eval(phi, 0.0) == 1.0
        assert bump_eval(phi, 25.0) == 1.0

    def test_negative_rejected(self) -> None:
        with pytest.raises(DomainError):
            bump_eval(BumpFunction(), -0.1)
        with pytest.raises(DomainError):
            bump_eval(BumpFunction(), float("nan"))


@pytest.mark.unit
class TestEdgeDifference:
    """Test cases for edge differences."""

    def test_equal_opinions(self, single_edge: Graph) -> None:
        sheaf = constant_sheaf(single_edge, 1)
        assert edge_difference(sheaf, np.array([0.3, 0.3]), 0) == 0.0

    def test_scalar(self, single_edge: Graph) -> None:
        sheaf = constant_sheaf(single_edge, 1)
        assert edge_difference(sheaf, np.array([0.0, 0.7]), 0) == pytest.approx(0.7)

    def test_euclidean_norm(self, single_edge: Graph) -> None:
        sheaf = constant_sheaf(single_edge, 2)
        state = OpinionState.from_vectors([[0.0, 0.0], [3.0, 4.0]])
        assert edge_difference(sheaf, state, 0) == pytest.approx(5.0)

    def test_uses_restrictions(self, twisted: CellularSheaf) -> None:
        # edge 0 restricts vertex 0 by -1, so equal opinions differ
        assert edge_difference(twisted, np.array([1.0, 1.0, 1.0]), 0) == pytest.approx(2.0)

    def test_invalid(self, single_edge: Graph) -> None:
        sheaf = constant_sheaf(single_edge, 1)
        with pytest.raises(DomainError):
            edge_difference(sheaf, np.array([0.0, 1.0]), 1)
        with pytest.raises(DomainError):
            edge_difference(sheaf, np.array([0.0, 1.0, 2.0]), 0)


@pytest.mark.unit
class TestDerivative:
    """Test cases for the flow derivative."""

    def test_single_edge_phi1(self, single_edge: Graph) -> None:
        sheaf = constant_sheaf(single_edge, 1)
        result = derivative(sheaf, BumpFunction(), OpinionState.from_vectors([0.0, 0.5], time=3.0))
        assert result.values.tolist() == pytest.approx([0.25, -0.25])
        assert result.time == 3.0

    def test_consensus_is_stationary(self, karate: Graph) -> None:
        sheaf = constant_sheaf(karate, 2)
        values = np.tile([0.4, -1.2], karate.vertex_count)
        assert np.all(derivative(sheaf, BumpFunction(), values).values == 0.0)

    def test_separated_is_stationary(self, path3: Graph) -> None:
        sheaf = constant_sheaf(path3, 1)
        assert np.all(derivative(sheaf, BumpFunction(), np.array([0.0, 1.5, 3.0])).values == 0.0)

    def test_constant_one_is_laplacian_flow(self, karate: Graph, rng: np.random.Generator) -> None:
        phi = BumpFunction(BumpKind.CONSTANT_ONE)
        for sheaf in (constant_sheaf(karate, 2), edge_projection_sheaf(karate)):
            laplacian = sheaf_laplacian(sheaf)
            for _ in range(5):
                x = rng.uniform(-3.0, 3.0, size=sheaf.c0_dim)
                assert np.allclose(derivative(sheaf, phi, x).values, -laplacian @ x, atol=1e-10, rtol=0)

    def test_sums_to_zero_for_constant_sheaf(self, karate: Graph, rng: np.random.Generator) -> None:
        sheaf = constant_sheaf(karate, 3)
        x = rng.uniform(-1.0, 1.0, size=sheaf.c0_dim)
        flow = derivative(sheaf, BumpFunction(BumpKind.PHI2), x).values.reshape(-1, 3)
        assert np.allclose(flow.sum(axis=0), 0.0, atol=1e-12)


@pytest.mark.unit
class TestEvolve:
    """Test cases for Euler time evolution."""

    def test_two_vertices_contract(self, single_edge: Graph) -> None:
        sheaf = constant_sheaf(single_edge, 1)
        outcome = evolve(sheaf, BumpFunction(), np.array([0.0, 0.5]))
        assert outcome.status is EvolutionStatus.CONVERGED
        assert outcome.consensus_edges == frozenset({0})
        assert outcome.state.values == pytest.approx([0.25, 0.25], abs=0.003)
        assert outcome.state.time == pytest.approx(outcome.steps * 0.01)

    def test_separated_start_stops_immediately(self, single_edge: Graph) -> None:
        sheaf = constant_sheaf(single_edge, 1)
        outcome = evolve(sheaf, BumpFunction(), np.array([0.0, 2.0]))
        assert outcome.converged
        assert outcome.steps == 0
        assert outcome.consensus_edges == frozenset()
        assert outcome.state.values.tolist() == [0.0, 2.0]

    def test_converged_edges_are_settled(self, karate: Graph, rng: np.random.Generator) -> None:
        sheaf = constant_sheaf(karate, 1)
        x0 = rng.uniform(-0.3, 0.3, size=sheaf.c0_dim)
        outcome = evolve(sheaf, BumpFunction(), x0, eps=0.0033)
        assert outcome.converged
        for e in range(karate.edge_count):
            difference = edge_difference(sheaf, outcome.state, e)
            assert difference <= 0.0033 or difference >= 1.0
            assert (e in outcome.consensus_edges) == (difference <= 0.0033)

    def test_abort(self) -> None:
        graph = counterexample_network()
        sheaf = constant_sheaf(graph, 1)
        outcome = evolve(sheaf, BumpFunction(), counterexample_state(sheaf, 0.0, 0.5), t_max=20.0)
        assert outcome.status is EvolutionStatus.ABORTED
        assert outcome.steps == 2000
        assert outcome.state.time == pytest.approx(20.0)

    def test_observer_sees_every_state(self, single_edge: Graph) -> None:
        trajectory: List[Tuple[float, np.ndarray]] = []
        sheaf = constant_sheaf(single_edge, 1)
        outcome = evolve(sheaf, BumpFunction(), np.array([0.0, 0.5]), observer=record_trajectory(trajectory))
        assert len(trajectory) == outcome.steps + 1
        assert trajectory[0][1].tolist() == [0.0, 0.5]
        assert trajectory[-1][1].tolist() == outcome.state.values.tolist()

    def test_mean_conservation(self, karate: Graph, rng: np.random.Generator) -> None:
        sheaf = constant_sheaf(karate, 2)
        x0 = rng.uniform(-1.5, 1.5, size=sheaf.c0_dim)
        sums: List[np.ndarray] = []
        evolve(sheaf, BumpFunction(BumpKind.PHI3), x0, t_max=100.0,
               observer=lambda t, values: sums.append(values.reshape(-1, 2).sum(axis=0)))
        drift = np.abs(np.array(sums) - sums[0]).max()
        assert drift < 1e-8

    def test_automorphism_commutes(self, two_triangles: Graph, rng: np.random.Generator) -> None:
        sheaf = constant_sheaf(two_triangles, 1)
        perm = np.array([1, 0, 2, 3, 5, 4])
        x0 = rng.uniform(-0.6, 0.6, size=6)
        first = evolve(sheaf, BumpFunction(), x0)
        second = evolve(sheaf, BumpFunction(), x0[perm])
        assert first.steps == second.steps
        assert np.allclose(first.state.values[perm], second.state.values, atol=1e-12)

    @pytest.mark.parametrize(
        "kwargs", [{"eps": 1.0}, {"eps": 0.0}, {"dt": 0.0}, {"t_max": -1.0}, {"t_max": math.inf}]
    )
    def test_invalid_parameters(self, single_edge: Graph, kwargs: dict) -> None:
        sheaf = constant_sheaf(single_edge, 1)
        with pytest.raises(DomainError):
            evolve(sheaf, BumpFunction(), np.array([0.0, 0.5]), **kwargs)

    def test_wrong_state_size(self, single_edge: Graph) -> None:
        with pytest.raises(DomainError):
            evolve(constant_sheaf(single_edge, 1), BumpFunction(), np.zeros(3))

    def test_non_finite_initial_state(self, single_edge: Graph) -> None:
        with pytest.raises(NumericalFailureError):
            evolve(constant_sheaf(single_edge, 1), BumpFunction(), np.array([0.0, np.nan]))

    def test_divergence_raises(self, single_edge: Graph) -> None:
        sheaf = constant_sheaf(single_edge, 1)
        with pytest.raises(NumericalFailureError) as exc_info:
            evolve(sheaf, BumpFunction(BumpKind.CONSTANT_ONE), np.array([0.0, 1.0]), dt=10.0, t_max=1e5)
        assert exc_info.value.time is not None


@pytest.mark.unit
class TestCounterexample:
    """Test cases for the non-settling six-vertex network."""

    def test_network(self) -> None:
        graph = counterexample_network()
        assert graph.vertex_count == 6
        assert graph.degrees.tolist() == [1, 1, 3, 3, 1, 1]

    def test_closed_form_initial_condition(self) -> None:
        assert counterexample_closed_form(0.1, 0.4, 0.0) == pytest.approx((0.1, 0.4), abs=1e-12)

    def test_closed_form_value(self) -> None:
        a, b = counterexample_closed_form(0.0, 0.5, 1.0)
        expected = 0.5 * (0.5 - 1.0 / (math.e ** 2 + 1.0))
        assert a == pytest.approx(expected, abs=1e-12)
        assert a == pytest.approx(0.19040, abs=1e-4)
        assert a + b == pytest.approx(0.5)

    def test_closed_form_limit(self) -> None:
        a, b = counterexample_closed_form(0.0, 0.5, 1000.0)
        assert a == pytest.approx(0.25)
        assert b == pytest.approx(0.25)

    @pytest.mark.parametrize("a0, b0", [(0.0, 1.2), (0.5, 0.2), (0.3, 0.3)])
    def test_closed_form_precondition(self, a0: float, b0: float) -> None:
        with pytest.raises(DomainError):
            counterexample_closed_form(a0, b0, 1.0)

    def test_state(self) -> None:
        sheaf = constant_sheaf(counterexample_network(), 1)
        state = counterexample_state(sheaf, 0.0, 0.5)
        assert state.values.tolist() == [0.0, 0.0, 0.5, 1.0, 1.5, 1.5]
        with pytest.raises(DomainError):
            counterexample_state(constant_sheaf(counterexample_network(), 2), 0.0, 0.5)

    def test_trajectory_matches_closed_form(self) -> None:
        sheaf = constant_sheaf(counterexample_network(), 1)
        trajectory: List[Tuple[float, np.ndarray]] = []
        evolve(sheaf, BumpFunction(), counterexample_state(sheaf, 0.0, 0.5), t_max=10.0,
               observer=record_trajectory(trajectory))
        assert trajectory[-1][0] == pytest.approx(10.0)
        error = 0.0
        for t, values in trajectory:
            a, b = counterexample_closed_form(0.0, 0.5, t)
            error = max(error, abs(values[0] - a), abs(values[2] - b), abs(values[3] - 1.0 - a))
        assert error < 1e-2

    @pytest.mark.slow
    def test_aborts_at_default_horizon(self) -> None:
        sheaf = constant_sheaf(counterexample_network(), 1)
        outcome = evolve(sheaf, BumpFunction(), counterexample_state(sheaf, 0.0, 0.5), t_max=1000.0)
        assert outcome.status is EvolutionStatus.ABORTED
        assert outcome.state.time == pytest.approx(1000.0)
        # the middle edge creeps up to the threshold without clearing it
        assert 0.99 < edge_difference(sheaf, outcome.state, 2) <= 1.0
