"""Pytest config: makes ``planar_fvs/src`` importable as the top-level ``src`` package."""

from __future__ import annotations

import sys
from collections.abc import Callable
from pathlib import Path

import pytest

# Let tests do `from src.embed_core import ...`
_PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(_PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(_PROJECT_ROOT))

from src.const import Guards  # noqa: E402
from src.embed_core import PlanarDigraph  # noqa: E402
from src.pdg import read_pdg  # noqa: E402

FIXTURES = Path(__file__).resolve().parent / "fixtures" / "pdg"


def load(name: str) -> PlanarDigraph:
    return read_pdg(FIXTURES / f"{name}.pdg")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def load_pdg() -> Callable[[str], PlanarDigraph]:
    return load


@pytest.fixture
def triangle() -> PlanarDigraph:
    return load("triangle")


@pytest.fixture
def square() -> PlanarDigraph:
    return load("square")


@pytest.fixture
def bowtie() -> PlanarDigraph:
    return load("bowtie")


@pytest.fixture
def two_squares() -> PlanarDigraph:
    return load("two_squares")


@pytest.fixture
def acyclic() -> PlanarDigraph:
    return load("acyclic_tournament")


@pytest.fixture
def small_guards() -> Guards:
    return Guards(n=30, nodes=50_000, cycles=2_000)
