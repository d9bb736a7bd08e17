"""Immutable simple undirected graphs and exhaustive clique counting."""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from .errors import MalformedInputError
from .kernels import census_counts

__all__ = [
    "Graph",
    "CliqueCensus",
    "vertex_set",
    "is_clique",
    "count_cliques_by_size",
    "max_clique_size_bruteforce",
]


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Adjacency is held as a read-only ``n x n`` boolean matrix, so
    ``has_edge`` is a single lookup.  Neighbourhoods are also available as
    Python integer bitmasks (``rows``) for set algebra.
    """

    def __init__(self, adj):
        adj = np.array(adj, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise MalformedInputError(f"adjacency must be square, got shape {adj.shape}")
        if adj.diagonal().any():
            raise MalformedInputError("self-loop in adjacency matrix")
        if not np.array_equal(adj, adj.T):
            raise MalformedInputError("adjacency matrix is not symmetric")
        adj.flags.writeable = False
        self.adj = adj
        self.n = adj.shape[0]
        self.m = int(adj.sum()) // 2

    @classmethod
    def from_edges(cls, n, edges):
        if n < 0:
            raise MalformedInputError(f"negative vertex count {n}")
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedInputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise MalformedInputError(f"self-loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(adj)

    @classmethod
    def empty(cls, n):
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def complete(cls, n):
        return cls(~np.eye(n, dtype=bool))

    def has_edge(self, u, v):
        return bool(self.adj[u, v])

    def neighbors(self, v):
        return np.flatnonzero(self.adj[v])

    def degree(self, v):
        return int(self.adj[v].sum())

    def edges(self):
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    @cached_property
    def rows(self):
        """Neighbourhood of each vertex as an integer bitmask."""
        weights = [1 << v for v in range(self.n)]
        return tuple(sum(weights[w] for w in np.flatnonzero(row).tolist()) for row in self.adj)

    def complement(self):
        return Graph(~self.adj & ~np.eye(self.n, dtype=bool))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.n, np.packbits(self.adj).tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def vertex_set(graph, members):
    """Validate ``members`` as a sorted, duplicate-free vertex tuple of ``graph``."""
    members = tuple(int(v) for v in members)
    if any(a >= b for a, b in zip(members, members[1:])):
        raise MalformedInputError(f"vertex set {members} is not strictly increasing")
    if members and not (0 <= members[0] and members[-1] < graph.n):
        raise MalformedInputError(f"vertex set {members} not inside 0..{graph.n - 1}")
    return members


def is_clique(graph, members):
    members = vertex_set(graph, members)
    adj = graph.adj
    return all(adj[u, v] for u, v in combinations(members, 2))


@dataclass(frozen=True)
class CliqueCensus:
    """Clique counts by size; sizes with no clique are omitted from ``counts``."""

    n: int
    counts: dict = field(default_factory=dict)

    def __getitem__(self, size):
        return self.counts.get(size, 0)

    @property
    def total(self):
        """Number of cliques with at least two vertices."""
        return sum(c for s, c in self.counts.items() if s >= 2)

    @property
    def clique_number(self):
        return max(self.counts, default=0)

    def tail_sum(self, smallest):
        return sum(c for s, c in self.counts.items() if s >= smallest)

    def to_dict(self):
        return {
            "schema": "v1",
            "n": self.n,
            "counts": {str(s): c for s, c in sorted(self.counts.items())},
            "total": self.total,
        }


def count_cliques_by_size(graph):
    raw = census_counts(graph.adj)
    counts = {s: int(c) for s, c in enumerate(raw) if s >= 1 and c > 0}
    return CliqueCensus(graph.n, counts)


def max_clique_size_bruteforce(graph):
    return count_cliques_by_size(graph).clique_number
