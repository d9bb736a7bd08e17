import itertools

import pytest

from avgclique.gnp import NaturalDistribution, RngSeed, sample_gnp
from avgclique.graph import Graph, count_cliques_by_size, is_clique
from avgclique.maximal import (
    count_maximal_cliques,
    enumerate_pivot_backtracking,
    enumerate_vertex_incremental,
    is_maximal_clique,
    maximal_cliques_bruteforce,
)

from conftest import all_graphs, random_graph

ENUMS = [enumerate_vertex_incremental, enumerate_pivot_backtracking]


@pytest.mark.parametrize("enum", ENUMS)
def test_triangle(enum):
    assert list(enum(Graph.complete(3))) == [(0, 1, 2)]


@pytest.mark.parametrize("enum", ENUMS)
def test_path(enum, path3):
    assert sorted(enum(path3)) == [(0, 1), (1, 2)]


@pytest.mark.parametrize("enum", ENUMS)
def test_octahedron(enum, octahedron):
    found = sorted(enum(octahedron))
    assert len(found) == 8
    assert found == sorted(maximal_cliques_bruteforce(octahedron))


@pytest.mark.parametrize("enum", ENUMS)
def test_edgeless_singletons(enum):
    assert sorted(enum(Graph.empty(4))) == [(0,), (1,), (2,), (3,)]


@pytest.mark.parametrize("enum", ENUMS)
def test_k5_minus_edge(enum):
    g = Graph.from_edges(5, [e for e in itertools.combinations(range(5), 2) if e != (0, 1)])
    assert sorted(enum(g)) == [(0, 2, 3, 4), (1, 2, 3, 4)]


@pytest.mark.parametrize("enum", ENUMS)
def test_no_vertices(enum):
    assert list(enum(Graph.empty(0))) == []


@pytest.mark.parametrize("n", range(6))
def test_exhaustive_completeness(n):
    for g in all_graphs(n):
        expected = maximal_cliques_bruteforce(g)
        for enum in ENUMS:
            assert sorted(enum(g)) == sorted(expected)


def test_cross_algorithm_equality(rng):
    for i in range(1000):
        g = random_graph(rng, rng.randint(0, 30), (0.2, 0.5, 0.8)[i % 3])
        a = list(enumerate_vertex_incremental(g))
        b = list(enumerate_pivot_backtracking(g))
        assert len(a) == len(set(a))
        assert len(b) == len(set(b))
        assert set(a) == set(b)


def test_soundness(rng):
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 25), rng.random())
        for enum in ENUMS:
            for clique in enum(g):
                assert list(clique) == sorted(clique)
                assert is_clique(g, clique)
                assert is_maximal_clique(g, clique)


def test_stream_tracks_emitted_and_cost(octahedron):
    stream = enumerate_vertex_incremental(octahedron)
    first = next(stream)
    assert stream.emitted == 1 and stream.cost > 0
    assert len(list(stream)) == 7
    assert stream.emitted == 8


def test_emission_order_is_deterministic(rng):
    g = random_graph(rng, 25, 0.4)
    for enum in ENUMS:
        assert list(enum(g)) == list(enum(g))


def test_count_maximal_cliques():
    assert count_maximal_cliques(Graph.complete(7)) == 1
    assert count_maximal_cliques(Graph.empty(9)) == 9
    assert count_maximal_cliques(Graph.empty(9), method="pivot") == 9


def test_maximal_count_below_clique_count(rng):
    for _ in range(500):
        g = random_graph(rng, rng.randint(1, 15), rng.random())
        census = count_cliques_by_size(g)
        assert count_maximal_cliques(g) <= census.total + census[1]


def test_output_sensitive_cost_report():
    n = 200
    ratios = []
    for t in range(5):
        g = sample_gnp(NaturalDistribution.power_law(0.7), n, RngSeed(11, t))
        stream = enumerate_vertex_incremental(g)
        mk = sum(1 for _ in stream)
        ratios.append(stream.cost / (n ** 3 * mk))
    # reported, not asserted against a constant
    print(f"cost / (n^3 MK) on G(200, 200^-0.7): max {max(ratios):.3e}")
    assert all(r > 0 for r in ratios)
