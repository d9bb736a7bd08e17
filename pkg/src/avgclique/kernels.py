"""Hot inner loops over a boolean adjacency matrix.

Each kernel has a loop form (compiled by numba when enabled) and a numpy
form.  The public ``*_counts`` / ``*_scan`` / ``*_search`` entry points pick
the compiled loop when numba is on and the numpy form otherwise; both forms
are exported so tests and the benchmark can compare them directly.

Every kernel that reports a cost counts adjacency-matrix lookups, and the
two forms agree on that count exactly.
"""
import numpy as np

from ._jit import NUMBA_ENABLED, njit, python_impl

__all__ = [
    "census_dfs",
    "census_levels",
    "census_counts",
    "elementary_scan_loop",
    "elementary_scan_numpy",
    "elementary_scan",
    "brute_force_loop",
    "brute_force_search",
]


@njit
def census_dfs(adj):
    """Number of cliques of every size, by depth-first extension.

    A clique is only extended with vertices larger than its current maximum,
    so each clique is visited once.  Returns ``counts`` with ``counts[s]`` the
    number of ``s``-cliques, length ``n + 1``.
    """
    n = adj.shape[0]
    counts = np.zeros(n + 1, dtype=np.int64)
    if n == 0:
        return counts
    counts[1] = n
    cand = np.empty((n + 1, n), dtype=np.int64)
    clen = np.zeros(n + 1, dtype=np.int64)
    pos = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        length = 0
        for w in range(v + 1, n):
            if adj[v, w]:
                cand[1, length] = w
                length += 1
        clen[1] = length
        pos[1] = 0
        d = 1
        while d >= 1:
            if pos[d] < clen[d]:
                u = cand[d, pos[d]]
                pos[d] += 1
                counts[d + 1] += 1
                length = 0
                for i in range(pos[d], clen[d]):
                    w = cand[d, i]
                    if adj[u, w]:
                        cand[d + 1, length] = w
                        length += 1
                if length > 0:
                    d += 1
                    clen[d] = length
                    pos[d] = 0
            else:
                d -= 1
    return counts


def census_levels(adj):
    """Level-by-level clique census with vectorised candidate masks."""
    n = adj.shape[0]
    counts = np.zeros(n + 1, dtype=np.int64)
    if n == 0:
        return counts
    counts[1] = n
    upper = np.triu(np.asarray(adj, dtype=bool), 1)
    cand = upper
    size = 1
    while True:
        rows, last = np.nonzero(cand)
        if rows.size == 0:
            break
        size += 1
        counts[size] = rows.size
        cand = cand[rows] & upper[last]
    return counts


def census_counts(adj):
    if NUMBA_ENABLED:
        return census_dfs(adj)
    return census_levels(adj)


@njit
def elementary_scan_loop(adj, k):
    """First block ``{jk, ..., jk+k-1}`` that is a clique.

    Returns ``(j, cost)`` with ``j = -1`` when no block is complete.  Pairs in a
    block are checked in lexicographic order and the block is abandoned at the
    first missing edge.
    """
    n = adj.shape[0]
    cost = 0
    for j in range(n // k):
        base = j * k
        complete = True
        for a in range(k):
            for b in range(a + 1, k):
                cost += 1
                if not adj[base + a, base + b]:
                    complete = False
                    break
            if not complete:
                break
        if complete:
            return j, cost
    return -1, cost


def elementary_scan_numpy(adj, k):
    n = adj.shape[0]
    blocks = n // k
    if blocks == 0:
        return -1, 0
    a, b = np.triu_indices(k, 1)
    base = (np.arange(blocks) * k)[:, None]
    present = np.asarray(adj)[base + a, base + b]
    complete = present.all(axis=1)
    # position of the first missing pair, plus one, is the work per block
    per_block = np.where(complete, a.size, np.argmin(present, axis=1) + 1)
    if complete.any():
        j = int(np.argmax(complete))
        return j, int(per_block[: j + 1].sum())
    return -1, int(per_block.sum())


def elementary_scan(adj, k):
    if NUMBA_ENABLED:
        j, cost = elementary_scan_loop(adj, k)
        return int(j), int(cost)
    return elementary_scan_numpy(adj, k)


@njit
def brute_force_loop(adj, k):
    """Lexicographic search over ``k``-subsets with prefix pruning.

    A prefix is extended by ``v`` only after checking ``v`` against every
    prefix member (stopping at the first non-neighbour), so the first complete
    prefix of length ``k`` is the lexicographically smallest ``k``-clique.
    Requires ``1 <= k <= n``.  Returns ``(found, witness, cost)``.
    """
    n = adj.shape[0]
    chosen = np.empty(k, dtype=np.int64)
    cost = 0
    depth = 0
    nxt = 0
    while True:
        if depth == k:
            return True, chosen.copy(), cost
        limit = n - (k - depth)
        advanced = False
        v = nxt
        while v <= limit:
            ok = True
            for i in range(depth):
                cost += 1
                if not adj[chosen[i], v]:
                    ok = False
                    break
            if ok:
                chosen[depth] = v
                depth += 1
                nxt = v + 1
                advanced = True
                break
            v += 1
        if not advanced:
            if depth == 0:
                return False, chosen[:0].copy(), cost
            depth -= 1
            nxt = chosen[depth] + 1


def brute_force_search(adj, k):
    impl = brute_force_loop if NUMBA_ENABLED else python_impl(brute_force_loop)
    found, witness, cost = impl(adj, k)
    return bool(found), tuple(int(v) for v in witness), int(cost)
