#!/usr/bin/env python3
"""
Services package for sheaf community detection.

Contains the graph, sheaf, dynamics, detection and experiment logic.
"""

from .detection_service import (
    detect_constant,
    detect_deterministic,
    detect_edge_projection,
    detect_nonconstant,
    deterministic_edges,
    edge_keep_probability,
    resolve_singletons,
    sample_ball,
)
from .dynamics_service import (
    bump_eval,
    counterexample_network,
    counterexample_state,
    derivative,
    edge_difference,
    edge_norms,
    evolve,
    counterexample_closed_form,
)
from .experiment_service import (
    compare_stopping_criteria,
    derive_rng,
    error_radius,
    most_likely_partition_frequency,
    run_sweep,
    summarize_point,
    sweep_dataframe,
    write_csv,
)
from .graph_service import (
    adjacency_matrix,
    common_neighbors,
    connected_components,
    degree,
    edge_common_neighbors,
    karate_club,
    karate_edge_list_text,
    load_edge_list,
    load_graph_file,
    modularity,
)
from .sheaf_service import (
    coboundary,
    cohomology_dims,
    constant_sheaf,
    edge_projection_sheaf,
    numerical_rank,
    sheaf_laplacian,
    signed_incidence,
    twisted_triangle_sheaf,
)

__all__ = [
    # Graphs
    "load_edge_list",
    "load_graph_file",
    "karate_club",
    "karate_edge_list_text",
    "degree",
    "adjacency_matrix",
    "connected_components",
    "modularity",
    "common_neighbors",
    "edge_common_neighbors",
    # Sheaves
    "constant_sheaf",
    "edge_projection_sheaf",
    "twisted_triangle_sheaf",
    "signed_incidence",
    "coboundary",
    "sheaf_laplacian",
    "numerical_rank",
    "cohomology_dims",
    # Dynamics
    "bump_eval",
    "edge_difference",
    "edge_norms",
    "derivative",
    "evolve",
    "counterexample_closed_form",
    "counterexample_network",
    "counterexample_state",
    # Detection
    "sample_ball",
    "resolve_singletons",
    "detect_constant",
    "detect_nonconstant",
    "edge_keep_probability",
    "deterministic_edges",
    "detect_deterministic",
    "detect_edge_projection",
    # Experiments
    "derive_rng",
    "run_sweep",
    "summarize_point",
    "error_radius",
    "most_likely_partition_frequency",
    "sweep_dataframe",
    "write_csv",
    "compare_stopping_criteria",
]
