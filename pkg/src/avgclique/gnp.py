"""Edge-probability presets, seeded G(n, p) sampling and closed-form quantities.

Probabilities that can underflow (``p ** C(s, 2)`` and friends) are evaluated
in log space with ``math.log1p``/``math.exp`` and rounded once at the end.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np

from .errors import DomainError
from .graph import Graph

__all__ = [
    "NaturalDistribution",
    "RngSeed",
    "GENERATOR_NAME",
    "make_rng",
    "eval_p",
    "sample_gnp",
    "prob_no_elementary_clique_exact",
    "log_prob_no_elementary_clique",
    "Lemma1Bound",
    "lemma1_bound",
    "lemma1_hypothesis",
    "expected_clique_count",
    "log_expected_clique_count",
    "expected_clique_upper_bound",
    "s0_threshold",
    "s1_threshold",
    "DependencyDegree",
    "dependency_degree_bound",
    "delta_bound_applies",
    "jr_tail_bound",
]

KINDS = ("zero", "constant", "inverse_log", "power_law", "critical_window")


def _exact(value):
    """Exact rational for an int, Fraction or float (floats via their repr)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class NaturalDistribution:
    """Edge probability ``p(n) = n ** -g(n)`` from a closed list of presets.

    ``zero`` is p = 0; ``constant`` is a fixed ``p``; ``inverse_log`` is
    ``1 / log2(n)``; ``power_law`` is ``n ** -c``; ``critical_window`` is
    ``n ** (-2 / (k - 1))``.  The limit of ``g`` is declared per kind.
    """

    kind: str
    p: Optional[float] = None
    c: Optional[float] = None
    k: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown distribution kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "constant" and (self.p is None or not 0.0 < self.p <= 1.0):
            raise DomainError(f"constant distribution needs 0 < p <= 1, got {self.p}")
        if self.kind == "power_law" and (self.c is None or not self.c > 0):
            raise DomainError(f"power_law distribution needs c > 0, got {self.c}")
        if self.kind == "critical_window" and (self.k is None or int(self.k) != self.k or self.k < 3):
            raise DomainError(f"critical_window distribution needs integer k >= 3, got {self.k}")

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def constant(cls, p):
        return cls("constant", p=float(p))

    @classmethod
    def inverse_log(cls):
        return cls("inverse_log")

    @classmethod
    def power_law(cls, c):
        return cls("power_law", c=c)

    @classmethod
    def critical_window(cls, k):
        return cls("critical_window", k=int(k))

    @property
    def c_g(self):
        """Limit of ``g(n)`` as an exact ``Fraction``; ``None`` for ``zero``."""
        if self.kind == "zero":
            return None
        if self.kind in ("constant", "inverse_log"):
            return Fraction(0)
        if self.kind == "power_law":
            return _exact(self.c)
        return Fraction(2, self.k - 1)

    @property
    def is_dense(self):
        return self.c_g == 0

    def p_at(self, n):
        return eval_p(self, n)

    def g_at(self, n):
        """``-log_n p(n)``; undefined for ``zero``."""
        if self.kind == "zero":
            raise DomainError("the zero distribution has no exponent g(n)")
        if n < 2:
            raise DomainError(f"g(n) needs n >= 2, got {n}")
        if self.kind == "power_law":
            return float(self.c)
        if self.kind == "critical_window":
            return 2.0 / (self.k - 1)
        return -math.log(eval_p(self, n)) / math.log(n)

    def to_dict(self):
        out = {"kind": self.kind}
        if self.kind == "constant":
            out["p"] = self.p
        elif self.kind == "power_law":
            out["c"] = float(self.c) if isinstance(self.c, Fraction) else self.c
        elif self.kind == "critical_window":
            out["k"] = self.k
        return out

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict) or "kind" not in data:
            raise DomainError(f"distribution must be an object with a 'kind', got {data!r}")
        kind = data["kind"]
        allowed = {"zero": set(), "constant": {"p"}, "inverse_log": set(),
                   "power_law": {"c"}, "critical_window": {"k"}}.get(kind)
        if allowed is None:
            raise DomainError(f"unknown distribution kind {kind!r}; expected one of {KINDS}")
        extra = set(data) - allowed - {"kind"}
        if extra:
            raise DomainError(f"unexpected fields for {kind!r}: {sorted(extra)}")
        missing = allowed - set(data)
        if missing:
            raise DomainError(f"missing fields for {kind!r}: {sorted(missing)}")
        if kind == "constant":
            return cls.constant(data["p"])
        if kind == "power_law":
            return cls.power_law(data["c"])
        if kind == "critical_window":
            return cls.critical_window(data["k"])
        return cls(kind)


@dataclass(frozen=True)
class RngSeed:
    seed: int
    stream: int = 0

    def __post_init__(self):
        for name in ("seed", "stream"):
            value = getattr(self, name)
            if not 0 <= value < 2**64:
                raise DomainError(f"{name} must be an unsigned 64-bit integer, got {value}")


GENERATOR_NAME = "numpy.random.PCG64 via SeedSequence(seed, spawn_key=(stream, n))"


def make_rng(seed, n=0, purpose=None):
    """Independent generator for ``(seed, stream, n)``.

    ``purpose`` separates auxiliary streams (e.g. randomised restarts) from
    the graph sampler's stream for the same key.
    """
    key = (seed.stream, n) if purpose is None else (seed.stream, n, purpose)
    ss = np.random.SeedSequence(seed.seed, spawn_key=key)
    return np.random.Generator(np.random.PCG64(ss))


def eval_p(dist, n):
    if n < 2:
        raise DomainError(f"p(n) needs n >= 2, got {n}")
    kind = dist.kind
    if kind == "zero":
        p = 0.0
    elif kind == "constant":
        p = dist.p
    elif kind == "inverse_log":
        p = 1.0 / math.log2(n)
    elif kind == "power_law":
        p = float(n) ** -float(dist.c)
    else:
        p = float(n) ** (-2.0 / (dist.k - 1))
    return min(1.0, max(0.0, p))


@lru_cache(maxsize=64)
def _pair_index(n):
    us, vs = np.triu_indices(n, 1)
    us.flags.writeable = False
    vs.flags.writeable = False
    return us, vs


def sample_gnp(dist, n, seed):
    """Draw G(n, p(n)).

    One uniform variate per vertex pair, pairs taken in lexicographic order
    ``(0,1), (0,2), ..., (n-2,n-1)``; the pair is an edge when its variate is
    below ``p(n)``.
    """
    if n < 0:
        raise DomainError(f"vertex count must be non-negative, got {n}")
    adj = np.zeros((n, n), dtype=bool)
    if n >= 2 and dist.kind != "zero":
        p = eval_p(dist, n)
        us, vs = _pair_index(n)
        hit = make_rng(seed, n).random(us.size) < p
        adj[us[hit], vs[hit]] = True
        adj[vs[hit], us[hit]] = True
    return Graph(adj)


def _check_probability(p):
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability must lie in [0, 1], got {p}")


def _log_pow(p, exponent):
    """``log(p ** exponent)`` with ``log(0) = -inf``."""
    if p == 0.0:
        return -math.inf if exponent > 0 else 0.0
    return exponent * math.log(p)


def log_prob_no_elementary_clique(n, k, p):
    """Natural log of ``prob_no_elementary_clique_exact``; ``-inf`` when it is 0."""
    if k < 2 or k > n:
        raise DomainError(f"need 2 <= k <= n, got k={k}, n={n}")
    _check_probability(p)
    block_is_clique = math.exp(_log_pow(p, math.comb(k, 2)))
    if block_is_clique >= 1.0:
        return -math.inf
    return (n // k) * math.log1p(-block_is_clique)


def prob_no_elementary_clique_exact(n, k, p):
    """Chance that none of the ``n // k`` disjoint ``k``-blocks is a clique."""
    return math.exp(log_prob_no_elementary_clique(n, k, p))


def lemma1_hypothesis(n, k, g_n):
    """Whether ``k <= min(n ** (1/4), g(n) ** (-1/4))``."""
    cap = n ** 0.25
    if g_n > 0:
        cap = min(cap, g_n ** -0.25)
    return k <= cap


class Lemma1Bound(NamedTuple):
    value: float
    log_value: float
    hypothesis_holds: bool


def lemma1_bound(n, k, g_n):
    """``exp(-n ** (1 - g(n) C(k,2)) / (2k))`` together with its natural log.

    The value underflows to 0.0 long before the log does, so callers
    comparing tiny probabilities should use ``log_value``.
    """
    log_value = -(n ** (1.0 - g_n * math.comb(k, 2))) / (2 * k)
    return Lemma1Bound(math.exp(log_value), log_value, lemma1_hypothesis(n, k, g_n))


def log_expected_clique_count(n, p, s):
    if not 2 <= s <= n:
        raise DomainError(f"need 2 <= s <= n, got s={s}, n={n}")
    _check_probability(p)
    return math.log(math.comb(n, s)) + _log_pow(p, math.comb(s, 2))


def expected_clique_count(n, p, s):
    """Mean number of ``s``-cliques in G(n, p): ``C(n, s) * p ** C(s, 2)``.

    Evaluated directly while both factors are comfortably inside the float
    range, in log space otherwise.
    """
    log_mu = log_expected_clique_count(n, p, s)
    subsets = math.comb(n, s)
    power = p ** math.comb(s, 2)
    if subsets < 2**53 and power > 1e-290:
        return subsets * power
    return math.exp(log_mu)


def expected_clique_upper_bound(n, g_n, s):
    """The bound ``n ** (s - g(n) C(s, 2))`` on the mean ``s``-clique count."""
    if not 2 <= s <= n:
        raise DomainError(f"need 2 <= s <= n, got s={s}, n={n}")
    return float(n) ** (s - g_n * math.comb(s, 2))


def _positive_limit(c_g):
    c = _exact(c_g)
    if c <= 0:
        raise DomainError(f"threshold needs c_g > 0, got {c_g}")
    return c


def s0_threshold(c_g):
    """``2 * ceil(4 / c_g) + 1``."""
    return 2 * math.ceil(4 / _positive_limit(c_g)) + 1


def s1_threshold(c_g):
    """``max(ceil(25 / c_g), 3)``."""
    return max(math.ceil(25 / _positive_limit(c_g)), 3)


class DependencyDegree(NamedTuple):
    exact: int
    bound: int


def dependency_degree_bound(n, s):
    """Dependency degree of the ``s``-clique indicators in G(n, p).

    ``exact`` counts the ``s``-subsets sharing at least two vertices with a
    fixed one (the fixed set included), which is 0 when ``s == n``.
    ``bound`` is ``2 s^2 n^(s-2)``; it dominates ``exact`` when ``s <= n/2``.
    """
    if not 2 <= s <= n:
        raise DomainError(f"need 2 <= s <= n, got s={s}, n={n}")
    if s == n:
        exact = 0
    else:
        exact = sum(math.comb(s, i) * math.comb(n - s, s - i) for i in range(2, s + 1))
    return DependencyDegree(exact, 2 * s * s * n ** (s - 2))


def delta_bound_applies(n, s):
    return 2 * s <= n


def jr_tail_bound(mu, t, delta):
    """Upper-tail bound ``(1 + t/mu) ** (-t / (4 delta))`` for dependent sums."""
    if mu <= 0:
        raise DomainError(f"mean must be positive, got {mu}")
    if t < 0:
        raise DomainError(f"deviation must be non-negative, got {t}")
    if delta < 1:
        raise DomainError(f"dependency degree must be at least 1, got {delta}")
    return math.exp(-t / (4.0 * delta) * math.log1p(t / mu))
