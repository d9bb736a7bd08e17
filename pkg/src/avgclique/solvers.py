"""k-Clique deciders instrumented with a deterministic adjacency-query cost.

``cost`` stands in for running time: it counts adjacency lookups and is
identical across machines and runs.  ``wall_time`` is informational only.
"""
import enum
import time
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import DomainError
from .gnp import lemma1_hypothesis, make_rng
from .kernels import brute_force_search, elementary_scan
from .maximal import enumerate_vertex_incremental

__all__ = [
    "Path",
    "DecisionResult",
    "ScanResult",
    "GreedyResult",
    "brute_force_decide",
    "elementary_clique_scan",
    "algorithm_A",
    "algorithm_B",
    "adaptive_decide",
    "greedy_clique",
    "repeated_greedy",
    "greedy_decide",
    "SOLVERS",
]


class Path(str, enum.Enum):
    ELEMENTARY_HIT = "ElementaryHit"
    BRUTE_FORCE_FALLBACK = "BruteForceFallback"
    MAXIMAL_ENUMERATION = "MaximalEnumeration"
    BRUTE_FORCE_DIRECT = "BruteForceDirect"
    GREEDY_HEURISTIC = "GreedyHeuristic"


@dataclass
class DecisionResult:
    answer: bool
    witness: Optional[tuple]
    cost: int
    path: Path
    wall_time: float = 0.0
    satisfied_lemma1_hypothesis: Optional[bool] = None
    maximal_cliques: Optional[int] = None

    def same_decision(self, other):
        """Equality ignoring ``wall_time``."""
        return (self.answer, self.witness, self.cost, self.path, self.maximal_cliques) == (
            other.answer, other.witness, other.cost, other.path, other.maximal_cliques)

    def to_dict(self, one_based=False, timing=False):
        shift = 1 if one_based else 0
        out = {
            "schema": "v1",
            "answer": self.answer,
            "witness": None if self.witness is None else [v + shift for v in self.witness],
            "cost": self.cost,
            "path": self.path.value,
            "satisfied_lemma1_hypothesis": self.satisfied_lemma1_hypothesis,
        }
        if timing:
            out["wall_time"] = self.wall_time
        return out


def _trivial(graph, k):
    """Answer for ``k <= 1`` or ``k > n`` as ``(answer, witness)``, else None."""
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    if k == 0:
        return True, ()
    if k > graph.n:
        return False, None
    if k == 1:
        return True, (0,)
    return None


def brute_force_decide(graph, k):
    """Try ``k``-subsets in lexicographic order; the witness is the smallest clique."""
    start = time.perf_counter()
    trivial = _trivial(graph, k)
    if trivial is not None:
        answer, witness = trivial
        cost = 0
    else:
        answer, witness, cost = brute_force_search(graph.adj, k)
        if not answer:
            witness = None
    return DecisionResult(answer, witness, cost, Path.BRUTE_FORCE_DIRECT,
                          time.perf_counter() - start)


class ScanResult(NamedTuple):
    block: Optional[int]
    cost: int


def elementary_clique_scan(graph, k):
    """Smallest ``j`` with ``{jk, ..., jk+k-1}`` a clique, or ``None``."""
    if not 2 <= k <= graph.n:
        raise DomainError(f"need 2 <= k <= n, got k={k}, n={graph.n}")
    j, cost = elementary_scan(graph.adj, k)
    return ScanResult(j if j >= 0 else None, cost)


def algorithm_A(graph, k, g_n=None):
    """Scan the disjoint ``k``-blocks first, fall back to brute force on a miss.

    ``g_n``, when given, only annotates whether the instance meets the
    dense-case hypothesis ``k <= min(n^(1/4), g(n)^(-1/4))``.
    """
    start = time.perf_counter()
    hypothesis = None if g_n is None else lemma1_hypothesis(graph.n, k, g_n)
    trivial = _trivial(graph, k)
    if trivial is not None:
        answer, witness = trivial
        path = Path.ELEMENTARY_HIT if answer else Path.BRUTE_FORCE_FALLBACK
        return DecisionResult(answer, witness, 0, path, time.perf_counter() - start, hypothesis)
    block, cost = elementary_clique_scan(graph, k)
    if block is not None:
        witness = tuple(range(block * k, (block + 1) * k))
        return DecisionResult(True, witness, cost, Path.ELEMENTARY_HIT,
                              time.perf_counter() - start, hypothesis)
    answer, witness, extra = brute_force_search(graph.adj, k)
    return DecisionResult(answer, witness if answer else None, cost + extra,
                          Path.BRUTE_FORCE_FALLBACK, time.perf_counter() - start, hypothesis)


def algorithm_B(graph, k, short_circuit=True):
    """Decide via the maximal cliques: yes iff one has at least ``k`` vertices.

    With ``short_circuit`` the enumeration stops at the first large enough
    maximal clique; without it every maximal clique is enumerated and
    counted, which is what the cost experiments need.
    """
    start = time.perf_counter()
    stream = enumerate_vertex_incremental(graph)
    trivial = _trivial(graph, k)
    if trivial is not None and short_circuit:
        answer, witness = trivial
        return DecisionResult(answer, witness, 0, Path.MAXIMAL_ENUMERATION,
                              time.perf_counter() - start)
    witness = None
    for clique in stream:
        if witness is None and k >= 1 and len(clique) >= k:
            witness = clique[:k]
            if short_circuit:
                break
    if trivial is not None:
        answer, witness = trivial
    else:
        answer = witness is not None
    return DecisionResult(answer, witness, stream.cost, Path.MAXIMAL_ENUMERATION,
                          time.perf_counter() - start, None, stream.emitted)


def adaptive_decide(graph, k, dist, short_circuit=True):
    """Algorithm A when the limit ``c_g`` is 0, Algorithm B otherwise.

    The ``zero`` distribution has no ``g`` and goes to Algorithm B.
    """
    c_g = dist.c_g
    if c_g is not None and c_g == 0:
        g_n = dist.g_at(graph.n) if graph.n >= 2 else None
        return algorithm_A(graph, k, g_n)
    return algorithm_B(graph, k, short_circuit=short_circuit)


def _greedy_mask(rows, start, order):
    clique = 1 << start
    cand = rows[start]
    cost = 0
    for v in order:
        if not cand:
            break
        if cand >> v & 1:
            cost += bin(cand).count("1")
            clique |= 1 << v
            cand &= rows[v]
    return clique, cost


def _sorted_members(mask):
    return tuple(v for v in range(mask.bit_length()) if mask >> v & 1)


def greedy_clique(graph, start, order=None):
    """Maximal clique containing ``start``.

    Repeatedly adds the first vertex of ``order`` (index order by default)
    adjacent to every current member.
    """
    if not 0 <= start < graph.n:
        raise DomainError(f"start vertex {start} outside 0..{graph.n - 1}")
    mask, _ = _greedy_mask(graph.rows, start, range(graph.n) if order is None else order)
    return _sorted_members(mask)


class GreedyResult(NamedTuple):
    clique: tuple
    found: bool
    cost: int


def repeated_greedy(graph, k, trials, seed):
    """Best of ``trials`` greedy runs from random starts with shuffled orders."""
    if trials < 1:
        raise DomainError(f"trials must be at least 1, got {trials}")
    n = graph.n
    if n == 0:
        return GreedyResult((), k <= 0, 0)
    rng = make_rng(seed, n, purpose=1)
    rows = graph.rows
    best, best_size, cost = 0, 0, 0
    for _ in range(trials):
        start = int(rng.integers(n))
        order = rng.permutation(n).tolist()
        mask, spent = _greedy_mask(rows, start, order)
        cost += spent
        size = bin(mask).count("1")
        if size > best_size:
            best, best_size = mask, size
    return GreedyResult(_sorted_members(best), best_size >= k, cost)


def greedy_decide(graph, k, trials, seed):
    """One-sided heuristic: a yes is certified, a no may be wrong."""
    start = time.perf_counter()
    trivial = _trivial(graph, k)
    if trivial is not None:
        answer, witness = trivial
        return DecisionResult(answer, witness, 0, Path.GREEDY_HEURISTIC,
                              time.perf_counter() - start)
    clique, found, cost = repeated_greedy(graph, k, trials, seed)
    return DecisionResult(found, clique[:k] if found else None, cost,
                          Path.GREEDY_HEURISTIC, time.perf_counter() - start)


SOLVERS = ("auto", "A", "B", "brute", "greedy")
