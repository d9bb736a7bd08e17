"""Enumeration of all maximal cliques.

Two independent algorithms share one contract: every maximal clique is
emitted exactly once as a sorted vertex tuple, in a deterministic order, and
the stream can be abandoned at any point.

Both work on neighbourhood bitmasks and charge one unit of cost per
candidate tested against a neighbourhood, i.e. intersecting a candidate mask
``C`` with a row costs ``popcount(C)`` adjacency queries.
"""
from itertools import combinations

__all__ = [
    "MaximalCliqueStream",
    "enumerate_vertex_incremental",
    "enumerate_pivot_backtracking",
    "count_maximal_cliques",
    "maximal_cliques_bruteforce",
    "is_maximal_clique",
]


def _members(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _popcount(mask):
    return bin(mask).count("1")


class MaximalCliqueStream:
    """Iterator over maximal cliques that tracks emitted count and query cost."""

    def __init__(self, graph, walker):
        self.graph = graph
        self.emitted = 0
        self.cost = 0
        self._it = walker(graph, self)

    def __iter__(self):
        return self

    def __next__(self):
        clique = next(self._it)
        self.emitted += 1
        return clique

    def charge(self, mask):
        """Intersect-and-count helper: adds ``popcount(mask)`` to the cost."""
        self.cost += _popcount(mask)


def _greedy_extension_is(rows, base, limit_mask, target, stream):
    """Whether greedily extending ``base`` inside ``limit_mask`` yields ``target``.

    Greedy adds the smallest vertex adjacent to all current members until
    none is left; the result is the canonical maximal clique above ``base``.
    Stops as soon as a vertex outside ``target`` would be added.
    """
    cand = limit_mask & ~base
    rest = base
    while rest:
        low = rest & -rest
        stream.charge(cand)
        cand &= rows[low.bit_length() - 1]
        rest ^= low
    current = base
    while cand:
        low = cand & -cand
        if not low & target:
            return False
        current |= low
        cand ^= low
        stream.charge(cand)
        cand &= rows[low.bit_length() - 1]
    return current == target


def _incremental_walk(graph, stream):
    n = graph.n
    if n == 0:
        return
    rows = graph.rows
    # stack entries: (index of the next vertex to add, clique mask in G[0..index-1])
    stack = [(1, 1)]
    while stack:
        level, clique = stack.pop()
        if level == n:
            yield _members(clique)
            continue
        v = level
        bit = 1 << v
        below = bit - 1
        stream.charge(clique)
        inter = clique & rows[v]
        if inter == clique:
            stack.append((level + 1, clique | bit))
            continue
        children = [clique]
        # (clique & N(v)) + v is a new maximal clique of G[0..v] iff nothing
        # below v extends it and ``clique`` is its canonical parent
        common = rows[v] & below & ~inter
        rest = inter
        while rest and common:
            low = rest & -rest
            stream.charge(common)
            common &= rows[low.bit_length() - 1]
            rest ^= low
        if not common and _greedy_extension_is(rows, inter, below, clique, stream):
            children.append(inter | bit)
        for child in reversed(children):
            stack.append((level + 1, child))


def _pivot_walk(graph, stream):
    n = graph.n
    if n == 0:
        return
    rows = graph.rows

    def expand(clique, cand, excluded):
        if not cand and not excluded:
            yield _members(clique)
            return
        if not cand:
            return
        # Tomita pivot: the vertex of cand | excluded with most neighbours in cand
        best, best_hits = -1, -1
        pool = cand | excluded
        while pool:
            low = pool & -pool
            u = low.bit_length() - 1
            pool ^= low
            stream.charge(cand)
            hits = _popcount(cand & rows[u])
            if hits > best_hits:
                best, best_hits = u, hits
        todo = cand & ~rows[best]
        while todo:
            low = todo & -todo
            v = low.bit_length() - 1
            todo ^= low
            stream.charge(cand | excluded)
            yield from expand(clique | low, cand & rows[v], excluded & rows[v])
            cand &= ~low
            excluded |= low

    yield from expand(0, (1 << n) - 1, 0)


def enumerate_vertex_incremental(graph):
    """Maximal cliques grown by adding vertices ``0, 1, ..., n-1`` in turn.

    Every maximal clique ``C`` of ``G[0..v-1]`` either becomes ``C + v`` (when
    ``v`` sees all of ``C``) or survives unchanged and may also spawn
    ``(C & N(v)) + v``.  The spawn is kept only from the parent obtained by
    greedily re-extending ``C & N(v)``, so each clique has a single parent and
    no branch dies out: the work per emitted clique is polynomial in ``n``.
    """
    return MaximalCliqueStream(graph, _incremental_walk)


def enumerate_pivot_backtracking(graph):
    """Maximal cliques by Bron-Kerbosch backtracking with Tomita pivoting."""
    return MaximalCliqueStream(graph, _pivot_walk)


ENUMERATORS = {
    "incremental": enumerate_vertex_incremental,
    "pivot": enumerate_pivot_backtracking,
}


def count_maximal_cliques(graph, method="incremental"):
    return sum(1 for _ in ENUMERATORS[method](graph))


def is_maximal_clique(graph, members):
    adj = graph.adj
    members = tuple(members)
    if not all(adj[u, v] for u, v in combinations(members, 2)):
        return False
    inside = set(members)
    return not any(
        all(adj[w, u] for u in members) for w in range(graph.n) if w not in inside
    )


def maximal_cliques_bruteforce(graph):
    """All maximal cliques by testing every vertex subset; for tiny graphs only."""
    found = []
    for size in range(1, graph.n + 1):
        for members in combinations(range(graph.n), size):
            if is_maximal_clique(graph, members):
                found.append(members)
    return found
