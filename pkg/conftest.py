"""Shared fixtures for the percmax test suite."""

import numpy as np
import pytest

from percmax.engine import CellSet, Topology
from percmax.recurrence import MemoTable


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("PERCMAX_CACHE", "PERCMAX_JOBS", "PERCMAX_ORACLE_CAP", "PERCMAX_LOG_LEVEL", "PERCMAX_RENDER_SCALE"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture(scope="session")
def table() -> MemoTable:
    return MemoTable(200, 200)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


def figure_two_set(n: int) -> CellSet:
    """Odd cells of the bottom row, then edge seeds on every other row, alternating sides."""
    cells = [(x, 1) for x in range(1, n + 1, 2)]
    if n % 2 == 0:
        cells.append((n, 1))
    for i, y in enumerate(range(3, n + 1, 2)):
        cells.append((n if i % 2 == 0 else 1, y))
    return CellSet(cells)


@pytest.fixture
def figure_two() -> CellSet:
    return figure_two_set(7)


def random_set(rng: np.random.Generator, dims, density: float = 0.2) -> CellSet:
    mask = rng.random(tuple(reversed(dims))) < density
    return CellSet.from_mask(mask)


def full(topology: Topology) -> CellSet:
    return CellSet(topology.cells())
