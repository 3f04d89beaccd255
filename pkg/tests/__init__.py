#!/usr/bin/env python3
"""
Test package for sheaf community detection.

Test Structure:
- test_models.py: Tests for domain models and enums
- test_graph.py: Tests for graph ingestion, components and modularity
- test_sheaf.py: Tests for sheaves, coboundary, Laplacian and cohomology
- test_dynamics.py: Tests for bump functions and the bounded confidence flow
- test_detection.py: Tests for the detection algorithms and singleton resolution
- test_experiments.py: Tests for sweeps, statistics and CSV output
- test_utils.py: Tests for configuration, validators and formatters
- test_handlers.py: Tests for the command line
- conftest.py: Pytest configuration and fixtures

Usage:
    Run all tests:
    $ pytest

    Run with coverage:
    $ pytest --cov=sheaf_communities

    Skip the Monte Carlo acceptance runs:
    $ pytest -m "not slow"
"""

import sys
from pathlib import Path

# Add the parent directory to Python path for imports
parent_dir = Path(__file__).parent.parent
if str(parent_dir) not in sys.path:
    sys.path.insert(0, str(parent_dir))
