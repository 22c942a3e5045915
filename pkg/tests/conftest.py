import pytest

from cycletest.census import warmup
from cycletest.graph import Graph, from_edges


@pytest.fixture(scope="session", autouse=True)
def _compile_kernels():
    # pay the JIT cost once, up front
    warmup()


@pytest.fixture
def triangle() -> Graph:
    return from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def c6() -> Graph:
    return from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])


@pytest.fixture
def k4() -> Graph:
    return from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


@pytest.fixture
def k6() -> Graph:
    return from_edges(6, [(i, j) for i in range(6) for j in range(i + 1, 6)])


@pytest.fixture
def k33() -> Graph:
    return from_edges(6, [(i, 3 + j) for i in range(3) for j in range(3)])


@pytest.fixture
def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edges(10, outer + spokes + inner)
