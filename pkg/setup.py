#!/usr/bin/env python3
"""
Setup script for sheaf-communities.

Community detection on graphs with opinion dynamics over cellular sheaves.
"""

import sys
from pathlib import Path
from typing import Any, Dict, List

from setuptools import find_packages, setup


def read_file(filepath: str) -> str:
    """Read file contents safely."""
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            return f.read()
    except FileNotFoundError:
        return ""


def get_version() -> str:
    """Get version from the constants file."""
    version_file = Path(__file__).parent / "sheaf_communities" / "utils" / "constants.py"
    content = read_file(str(version_file))
    for line in content.split('\n'):
        if "'VERSION':" in line:
            return line.split("'")[3]
    return "0.1.0"


def _read_requirements(name: str) -> List[str]:
    path = Path(__file__).parent / name
    if not path.exists():
        return []
    with open(path, 'r', encoding='utf-8') as f:
        return [line.strip() for line in f if line.strip() and not line.startswith('#')]


def get_requirements() -> List[str]:
    """Get requirements from requirements.txt."""
    return _read_requirements("requirements.txt") or [
        "numpy>=1.22,<3.0",
        "scipy>=1.8,<2.0",
        "pandas>=1.5,<3.0",
        "python-dotenv>=1.0.0,<2.0.0",
        "typing-extensions>=4.8.0",
        "rich>=13.0.0,<14.0.0",
    ]


def get_dev_requirements() -> List[str]:
    """Get development requirements."""
    return _read_requirements("requirements.dev.txt") or [
        "pytest>=7.4.0,<8.0.0",
        "pytest-cov>=4.1.0,<5.0.0",
        "pytest-mock>=3.11.0,<4.0.0",
        "networkx>=3.0,<4.0",
        "black>=23.9.0,<24.0.0",
        "flake8>=6.1.0,<7.0.0",
        "mypy>=1.7.0,<2.0.0",
        "isort>=5.12.0,<6.0.0",
    ]


def validate_python_version() -> None:
    """Validate Python version compatibility."""
    if sys.version_info < (3, 9):
        raise RuntimeError(
            "This package requires Python 3.9 or higher. "
            f"You are using Python {sys.version_info.major}.{sys.version_info.minor}."
        )


def get_classifiers() -> List[str]:
    """Get package classifiers."""
    return [
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3 :: Only",
        "Operating System :: OS Independent",
        "Environment :: Console",
        "Typing :: Typed",
    ]


def get_entry_points() -> Dict[str, List[str]]:
    """Get entry points for console scripts."""
    return {
        "console_scripts": [
            "sheaf-communities=sheaf_communities.main:main",
        ],
    }


validate_python_version()

setup_config: Dict[str, Any] = {
    "name": "sheaf-communities",
    "version": get_version(),
    "description": "Community detection with sheaf opinion dynamics",
    "long_description": read_file(str(Path(__file__).parent / "README.md")),
    "long_description_content_type": "text/markdown",
    "packages": find_packages(exclude=['tests*', 'docs*', 'examples*']),
    "classifiers": get_classifiers(),
    "keywords": "community-detection cellular-sheaves opinion-dynamics modularity",
    "license": "MIT",
    "python_requires": ">=3.9",
    "install_requires": get_requirements(),
    "extras_require": {
        "dev": get_dev_requirements(),
        "testing": [
            "pytest>=7.4.0",
            "pytest-cov>=4.1.0",
            "pytest-mock>=3.11.0",
            "pytest-xdist>=3.3.0",
            "networkx>=3.0",
        ],
        "linting": [
            "black>=23.9.0",
            "flake8>=6.1.0",
            "mypy>=1.7.0",
            "isort>=5.12.0",
        ],
    },
    "entry_points": get_entry_points(),
    "include_package_data": True,
    "package_data": {
        "sheaf_communities": ["data/*.edges"],
    },
    "zip_safe": False,
    "platforms": ["any"],
}

if __name__ == "__main__":
    try:
        setup(**setup_config)
    except Exception as e:
        print(f"Setup failed: {e}", file=sys.stderr)
        sys.exit(1)
