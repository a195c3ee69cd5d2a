"""Pytest configuration and fixtures."""

import shutil
import tempfile
from collections.abc import Generator
from pathlib import Path

import pytest
from pytest import MonkeyPatch

from hyperchroma.hypergraph import Hypergraph


@pytest.fixture
def temp_hyperchroma_home(monkeypatch: MonkeyPatch) -> Generator[Path]:
    """Create a temporary .hyperchroma directory for testing."""
    with tempfile.TemporaryDirectory() as tmpdir:
        hyperchroma_home = Path(tmpdir) / ".hyperchroma"
        hyperchroma_home.mkdir()
        monkeypatch.setenv("HOME", tmpdir)
        monkeypatch.setenv("USERPROFILE", tmpdir)
        yield hyperchroma_home
        if hyperchroma_home.exists():
            shutil.rmtree(hyperchroma_home, ignore_errors=True)


@pytest.fixture
def triangle() -> Hypergraph:
    """2-uniform triangle: chromatic number 3."""
    return Hypergraph.from_edges(3, [(0, 1), (1, 2), (0, 2)], uniformity=2)


@pytest.fixture
def path_graph() -> Hypergraph:
    """Two edges {0,1}, {1,2} sharing vertex 1."""
    return Hypergraph.from_edges(3, [(0, 1), (1, 2)])
