#!/usr/bin/env python3
"""
Constants for sheaf community detection.

Contains the builtin karate-club data, default parameter grids, output
formats and package metadata.
"""

from typing import Dict, Final, List, Tuple

# Zachary's karate club: 34 members, 78 friendships, 0-based ids
KARATE_CLUB_VERTEX_COUNT: Final[int] = 34
KARATE_CLUB_EDGES: Final[Tuple[Tuple[int, int], ...]] = (
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8),
    (0, 10), (0, 11), (0, 12), (0, 13), (0, 17), (0, 19), (0, 21), (0, 31),
    (1, 2), (1, 3), (1, 7), (1, 13), (1, 17), (1, 19), (1, 21), (1, 30),
    (2, 3), (2, 7), (2, 8), (2, 9), (2, 13), (2, 27), (2, 28), (2, 32),
    (3, 7), (3, 12), (3, 13),
    (4, 6), (4, 10),
    (5, 6), (5, 10), (5, 16),
    (6, 16),
    (8, 30), (8, 32), (8, 33),
    (9, 33),
    (13, 33),
    (14, 32), (14, 33),
    (15, 32), (15, 33),
    (18, 32), (18, 33),
    (19, 33),
    (20, 32), (20, 33),
    (22, 32), (22, 33),
    (23, 25), (23, 27), (23, 29), (23, 32), (23, 33),
    (24, 25), (24, 27), (24, 31),
    (25, 31),
    (26, 29), (26, 33),
    (27, 33),
    (28, 31), (28, 33),
    (29, 32), (29, 33),
    (30, 32), (30, 33),
    (31, 32), (31, 33),
    (32, 33),
)

# Graph source keyword for the bundled dataset
KARATE_GRAPH_NAME: Final[str] = "karate"

# Edge-list format
EDGE_LIST_COMMENT: Final[str] = "#"
EDGE_LIST_HEADER: Final[str] = "V"


def _grid(start: float, step: float, count: int) -> Tuple[float, ...]:
    # grid values carry no float noise: 0.05 * 3 -> 0.15
    return tuple(round(start + step * k, 10) for k in range(count))


# Default sweep grids
DEFAULT_D_GRID: Final[Tuple[float, ...]] = _grid(0.5, 0.5, 12)      # 0.5 .. 6.0
DEFAULT_P_GRID: Final[Tuple[float, ...]] = _grid(0.0, 0.02, 36)     # 0 .. 0.7
DEFAULT_A_GRID: Final[Tuple[float, ...]] = _grid(0.0, 0.05, 21)     # 0 .. 1
DEFAULT_B_GRID: Final[Tuple[float, ...]] = _grid(-2.0, 0.25, 29)    # -2 .. 5
DEFAULT_PHI_GRID: Final[Tuple[int, ...]] = (1,)
DEFAULT_N_GRID: Final[Tuple[int, ...]] = (1,)

# Single-run defaults
DEFAULTS: Final[Dict[str, object]] = {
    'SEED': 0,
    'N': 1,
    'D': 2.0,
    'PHI': 1,
    'P': 0.5,
    'A': 0.3,
    'B': 1.0,
    'RUNS': 100,
    'PRECISE_EPS': 0.001,
}

# Valid phi indices on the command line
PHI_CHOICES: Final[List[int]] = [1, 2, 3, 4]

# Sheaf kinds accepted by the cohomology command
SHEAF_KINDS: Final[List[str]] = ['constant', 'edgeproj', 'twisted']

# CSV output columns following the grid parameters
CSV_STAT_COLUMNS: Final[List[str]] = ['num', 'numerr', 'qav', 'qaverr', 'aborts', 'pmax']

# Text output
MODULARITY_FORMAT: Final[str] = "Q = {:.6f}"
COHOMOLOGY_FORMAT: Final[str] = "h0 = {}, h1 = {}"

# CLI exit codes
EXIT_CODES: Final[Dict[str, int]] = {
    'SUCCESS': 0,
    'USAGE_ERROR': 1,
    'RUNTIME_ERROR': 2,
}

# Package metadata
PACKAGE_INFO: Final[Dict[str, str]] = {
    'NAME': 'sheaf-communities',
    'VERSION': '0.1.0',
    'DESCRIPTION': 'Community detection with sheaf opinion dynamics',
    'LICENSE': 'MIT',
}
