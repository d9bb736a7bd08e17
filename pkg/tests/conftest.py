import itertools
import random

import pytest

from avgclique.graph import Graph

_ACCEPTANCE = []


def all_graphs(n):
    """Every labelled graph on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for i, e in enumerate(pairs) if bits >> i & 1])


def random_graph(rng, n, p):
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


@pytest.fixture
def k4():
    return Graph.complete(4)


@pytest.fixture
def path3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def octahedron():
    # K_{2,2,2} with parts {0,1}, {2,3}, {4,5}
    return Graph.from_edges(
        6, [(u, v) for u, v in itertools.combinations(range(6), 2) if u // 2 != v // 2])


@pytest.fixture
def rng():
    return random.Random(20261019)


@pytest.fixture
def acceptance_report():
    def record(number, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {detail}"
        _ACCEPTANCE.append((number, line))
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line)
