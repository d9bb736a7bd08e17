"""Seed-reproducible Monte-Carlo experiments over G(n, p).

Trial ``i`` at size ``n`` always draws its graph from stream ``i`` of the
configured seed (with ``n`` mixed into the key), so trials can run in any
order or in parallel and still produce identical records.  Summaries are
computed from the records sorted by ``(n, trial)`` and can be recomputed from
a CSV file alone.
"""
import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from ._jit import NUMBA_ENABLED
from .errors import ConfigError, DomainError, OracleMismatchError
from .gnp import (
    GENERATOR_NAME,
    NaturalDistribution,
    RngSeed,
    dependency_degree_bound,
    eval_p,
    expected_clique_count,
    jr_tail_bound,
    prob_no_elementary_clique_exact,
    s1_threshold,
    sample_gnp,
)
from .graph import count_cliques_by_size, max_clique_size_bruteforce
from .maximal import enumerate_vertex_incremental
from .solvers import (
    SOLVERS,
    adaptive_decide,
    algorithm_A,
    algorithm_B,
    brute_force_decide,
    elementary_clique_scan,
    greedy_clique,
    greedy_decide,
    repeated_greedy,
)

__all__ = [
    "EXPERIMENT_KINDS",
    "ExperimentConfig",
    "TrialRecord",
    "run_experiment",
    "summarize",
    "avgfpt_diagnostic",
    "typfpt_diagnostic",
    "clique_size_tail_sum",
    "greedy_gap_trial",
    "greedy_gap_experiment",
    "records_to_csv",
    "records_from_csv",
    "write_outputs",
]

EXPERIMENT_KINDS = (
    "ElementaryMiss",
    "CliqueCensusMean",
    "TailFrequency",
    "SolverCost",
    "AvgFptDiagnostic",
    "TypFptDiagnostic",
    "GreedyGap",
)

COLUMNS = {
    "ElementaryMiss": ("miss", "cost"),
    "CliqueCensusMean": ("count", "edges"),
    "TailFrequency": ("count", "edges"),
    "SolverCost": ("answer", "cost", "path", "lemma1", "oracle_checked"),
    "AvgFptDiagnostic": ("answer", "cost", "path", "lemma1", "oracle_checked"),
    "TypFptDiagnostic": ("answer", "cost", "maximal_cliques", "clique_total", "tail_sum"),
    "GreedyGap": ("greedy_size", "repeated_size", "max_size"),
}
BASE_COLUMNS = ("n", "k", "trial", "stream")

# Exact maximum clique sizes are only computed up to this many vertices.
GREEDY_EXACT_MAX_N = 30


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    distribution: NaturalDistribution
    n_grid: tuple
    k: int
    trials: int
    seed: int = 0
    solver: str = "auto"
    short_circuit: bool = True
    sigma: float = 3.0
    c: Optional[float] = None
    t_grid: tuple = ()
    greedy_restarts: int = 0
    oracle_max_n: int = 25

    def __post_init__(self):
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        object.__setattr__(self, "t_grid", tuple(float(t) for t in self.t_grid))
        self.validate()

    def validate(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}; expected one of {EXPERIMENT_KINDS}")
        if self.trials < 1:
            raise ConfigError(f"trials must be at least 1, got {self.trials}")
        if not self.n_grid:
            raise ConfigError("n_grid must not be empty")
        if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ConfigError(f"n_grid must be strictly increasing, got {list(self.n_grid)}")
        if self.n_grid[0] < 0:
            raise ConfigError("n_grid entries must be non-negative")
        if self.k < 0:
            raise ConfigError(f"k must be non-negative, got {self.k}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.solver not in SOLVERS:
            raise ConfigError(f"unknown solver {self.solver!r}; expected one of {SOLVERS}")
        if self.sigma <= 0:
            raise ConfigError("sigma must be positive")
        if self.kind in ("ElementaryMiss", "CliqueCensusMean", "TailFrequency"):
            if not 2 <= self.k <= self.n_grid[0]:
                raise ConfigError(f"{self.kind} needs 2 <= k <= min(n_grid), got k={self.k}")
        if self.kind == "TailFrequency" and not self.t_grid:
            raise ConfigError("TailFrequency needs a non-empty t_grid")
        if any(t < 0 for t in self.t_grid):
            raise ConfigError("t_grid entries must be non-negative")
        if self.kind == "AvgFptDiagnostic" and self.c is None:
            raise ConfigError("AvgFptDiagnostic needs the normalising exponent c")
        c_g = self.distribution.c_g
        if self.kind == "TypFptDiagnostic" and not (c_g is not None and c_g > 0):
            raise ConfigError("TypFptDiagnostic needs a sparse distribution (c_g > 0)")
        if self.kind == "GreedyGap" and c_g != 0:
            raise ConfigError("GreedyGap needs a dense distribution (c_g = 0)")
        if self.greedy_restarts < 0:
            raise ConfigError("greedy_restarts must be non-negative")

    def to_dict(self):
        out = asdict(self)
        out["distribution"] = self.distribution.to_dict()
        out["n_grid"] = list(self.n_grid)
        out["t_grid"] = list(self.t_grid)
        return out

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        try:
            data["distribution"] = NaturalDistribution.from_dict(data["distribution"])
            return cls(**data)
        except KeyError as exc:
            raise ConfigError(f"missing config field {exc}") from None
        except DomainError as exc:
            raise ConfigError(str(exc)) from None
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_json(cls, text):
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None


@dataclass(frozen=True)
class TrialRecord:
    n: int
    k: int
    trial: int
    stream: int
    values: dict = field(default_factory=dict)

    def row(self, kind):
        return [self.n, self.k, self.trial, self.stream] + [self.values[c] for c in COLUMNS[kind]]


def clique_size_tail_sum(graph, s1, method="census"):
    """Number of cliques with at least ``s1`` vertices.

    ``census`` counts every clique; ``maximal`` collects the ``s1``-or-larger
    subsets of each maximal clique, which is cheap when maximal cliques are
    small (the sparse case) and must agree with the census.
    """
    if s1 < 2:
        raise DomainError(f"s1 must be at least 2, got {s1}")
    if method == "census":
        return count_cliques_by_size(graph).tail_sum(s1)
    if method != "maximal":
        raise DomainError(f"unknown method {method!r}")
    seen = set()
    for clique in enumerate_vertex_incremental(graph):
        for size in range(s1, len(clique) + 1):
            seen.update(combinations(clique, size))
    return len(seen)


def greedy_gap_trial(graph, restarts, seed, exact=True):
    """Sizes from one greedy run (start 0), repeated greedy, and brute force."""
    if graph.n == 0:
        return {"greedy_size": 0, "repeated_size": 0, "max_size": 0 if exact else ""}
    greedy = len(greedy_clique(graph, 0))
    repeated = len(repeated_greedy(graph, graph.n + 1, max(restarts, 1), seed).clique)
    best = max_clique_size_bruteforce(graph) if exact else ""
    return {"greedy_size": greedy, "repeated_size": repeated, "max_size": best}


def _decide(cfg, graph, rng_seed):
    solver = cfg.solver
    if solver == "A":
        g_n = cfg.distribution.g_at(graph.n) if cfg.distribution.kind != "zero" and graph.n >= 2 else None
        return algorithm_A(graph, cfg.k, g_n)
    if solver == "B":
        return algorithm_B(graph, cfg.k, short_circuit=cfg.short_circuit)
    if solver == "brute":
        return brute_force_decide(graph, cfg.k)
    if solver == "greedy":
        return greedy_decide(graph, cfg.k, max(cfg.greedy_restarts, 1), rng_seed)
    return adaptive_decide(graph, cfg.k, cfg.distribution, short_circuit=cfg.short_circuit)


def _run_trial(cfg, n, trial):
    rng_seed = RngSeed(cfg.seed, trial)
    graph = sample_gnp(cfg.distribution, n, rng_seed)
    kind = cfg.kind
    if kind == "ElementaryMiss":
        block, cost = elementary_clique_scan(graph, cfg.k)
        values = {"miss": int(block is None), "cost": cost}
    elif kind in ("CliqueCensusMean", "TailFrequency"):
        values = {"count": count_cliques_by_size(graph)[cfg.k], "edges": graph.m}
    elif kind in ("SolverCost", "AvgFptDiagnostic"):
        result = _decide(cfg, graph, rng_seed)
        checked = n <= cfg.oracle_max_n and cfg.solver != "greedy"
        if checked:
            oracle = brute_force_decide(graph, cfg.k)
            if oracle.answer != result.answer:
                raise OracleMismatchError(
                    f"{cfg.solver} answered {result.answer} but brute force answered "
                    f"{oracle.answer} (n={n}, trial={trial})")
        hyp = result.satisfied_lemma1_hypothesis
        values = {
            "answer": int(result.answer),
            "cost": result.cost,
            "path": result.path.value,
            "lemma1": "" if hyp is None else int(hyp),
            "oracle_checked": int(checked),
        }
    elif kind == "TypFptDiagnostic":
        result = algorithm_B(graph, cfg.k, short_circuit=cfg.short_circuit)
        census = count_cliques_by_size(graph)
        values = {
            "answer": int(result.answer),
            "cost": result.cost,
            "maximal_cliques": "" if result.maximal_cliques is None else result.maximal_cliques,
            "clique_total": census.total,
            "tail_sum": census.tail_sum(s1_threshold(cfg.distribution.c_g)),
        }
    else:
        values = greedy_gap_trial(graph, cfg.greedy_restarts or n, rng_seed,
                                  exact=n <= GREEDY_EXACT_MAX_N)
    return TrialRecord(n, cfg.k, trial, trial, values)


def _run_chunk(args):
    cfg_dict, n, first, last = args
    cfg = ExperimentConfig.from_dict(cfg_dict)
    return [_run_trial(cfg, n, t) for t in range(first, last)]


def _default_threads():
    env = os.environ.get("AVGCLIQUE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"AVGCLIQUE_THREADS must be an integer, got {env!r}") from None
    return 1


def run_experiment(cfg, threads=None):
    """Run every trial of ``cfg``; returns ``(records, summary)``."""
    cfg.validate()
    threads = _default_threads() if threads is None else max(1, int(threads))
    if threads == 1:
        records = [_run_trial(cfg, n, t) for n in cfg.n_grid for t in range(cfg.trials)]
    else:
        size = max(1, math.ceil(cfg.trials / (4 * threads)))
        cfg_dict = cfg.to_dict()
        chunks = [(cfg_dict, n, a, min(a + size, cfg.trials))
                  for n in cfg.n_grid for a in range(0, cfg.trials, size)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = [r for part in pool.map(_run_chunk, chunks) for r in part]
    records.sort(key=lambda r: (r.n, r.trial))
    return records, summarize(cfg, records)


def _mean_se(values):
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    se = float(arr.std(ddof=1) / math.sqrt(arr.size)) if arr.size > 1 else 0.0
    return mean, se


def _by_n(records):
    groups = {}
    for r in sorted(records, key=lambda r: (r.n, r.trial)):
        groups.setdefault(r.n, []).append(r)
    return groups


def avgfpt_diagnostic(records, c, n_grid=None):
    """Normalised mean cost ``E[cost] / n^c`` per ``n`` and its running sum.

    The verdict only describes the finite grid: a non-increasing sequence of
    normalised means is reported as "consistent with avgFPT on this grid".
    """
    groups = _by_n(records)
    grid = sorted(groups) if n_grid is None else list(n_grid)
    rows, running = [], 0.0
    for n in grid:
        mean, se = _mean_se([r.values["cost"] for r in groups[n]])
        norm = mean / float(n) ** c
        running += norm
        rows.append({"n": n, "mean_cost": mean, "se_cost": se,
                     "normalized_mean": norm, "partial_sum": running})
    norms = [row["normalized_mean"] for row in rows]
    non_increasing = all(b <= a for a, b in zip(norms, norms[1:]))
    return {
        "c": c,
        "per_n": rows,
        "non_increasing": non_increasing,
        "verdict": "consistent with avgFPT on this grid" if non_increasing
        else "not consistent with avgFPT on this grid",
    }


def typfpt_diagnostic(records, threshold, measure="cost"):
    """Fraction of trials per ``n`` whose ``measure`` exceeds ``threshold(n)``."""
    limit = threshold if callable(threshold) else (lambda n: threshold)
    out = {}
    for n, group in _by_n(records).items():
        bound = limit(n)
        over = sum(1 for r in group if float(r.values[measure]) > bound)
        out[n] = {"threshold": bound, "exceedances": over, "fraction": over / len(group)}
    return out


def clique_proxy_threshold(n, s1):
    """``n^s1 + ln n``: the high-probability cap on the total clique count."""
    return float(n) ** s1 + math.log(n)


def _summary_for(cfg, n, group):
    kind = cfg.kind
    trials = len(group)
    out = {"n": n, "trials": trials}
    sigma = cfg.sigma
    if kind == "ElementaryMiss":
        p = eval_p(cfg.distribution, n)
        exact = prob_no_elementary_clique_exact(n, cfg.k, p)
        misses = sum(r.values["miss"] for r in group)
        freq = misses / trials
        se = math.sqrt(exact * (1 - exact) / trials)
        out.update(p=p, misses=misses, frequency=freq, exact=exact, binomial_se=se,
                   within_sigma=abs(freq - exact) <= sigma * se,
                   mean_cost=_mean_se([r.values["cost"] for r in group])[0])
    elif kind == "CliqueCensusMean":
        p = eval_p(cfg.distribution, n)
        mean, se = _mean_se([r.values["count"] for r in group])
        mu = expected_clique_count(n, p, cfg.k)
        out.update(p=p, mean=mean, se=se, expected=mu, within_sigma=abs(mean - mu) <= sigma * se)
    elif kind == "TailFrequency":
        p = eval_p(cfg.distribution, n)
        s = cfg.k
        mu = expected_clique_count(n, p, s)
        delta = max(dependency_degree_bound(n, s).bound, 1)
        counts = np.array([r.values["count"] for r in group])
        rows = []
        for t in cfg.t_grid:
            freq = float(np.mean(counts >= mu + t))
            bound = jr_tail_bound(mu, t, delta)
            se = math.sqrt(bound * (1 - bound) / trials)
            rows.append({"t": t, "frequency": freq, "bound": bound, "se": se,
                         "violation": freq > bound + sigma * se})
        out.update(p=p, expected=mu, delta=delta, tail=rows,
                   violations=sum(row["violation"] for row in rows))
    elif kind in ("SolverCost", "AvgFptDiagnostic"):
        mean, se = _mean_se([r.values["cost"] for r in group])
        paths = {}
        for r in group:
            paths[r.values["path"]] = paths.get(r.values["path"], 0) + 1
        lemma = [r.values["lemma1"] for r in group if r.values["lemma1"] != ""]
        out.update(mean_cost=mean, se_cost=se,
                   yes_fraction=sum(r.values["answer"] for r in group) / trials,
                   paths=dict(sorted(paths.items())),
                   lemma1_fraction=(sum(lemma) / len(lemma)) if lemma else None,
                   oracle_checked=sum(r.values["oracle_checked"] for r in group))
    elif kind == "TypFptDiagnostic":
        s1 = s1_threshold(cfg.distribution.c_g)
        proxy = clique_proxy_threshold(n, s1)
        mean, se = _mean_se([r.values["cost"] for r in group])
        out.update(s1=s1, mean_cost=mean, se_cost=se,
                   clique_proxy_threshold=proxy,
                   clique_proxy_exceedances=sum(1 for r in group if r.values["clique_total"] > proxy),
                   tail_threshold=math.log(n),
                   tail_exceedances=sum(1 for r in group if r.values["tail_sum"] > math.log(n)),
                   max_clique_total=max(r.values["clique_total"] for r in group))
    else:
        greedy = [r.values["greedy_size"] for r in group]
        repeated = [r.values["repeated_size"] for r in group]
        out.update(mean_greedy=float(np.mean(greedy)), mean_repeated=float(np.mean(repeated)))
        exact = [r for r in group if r.values["max_size"] != ""]
        if exact:
            out.update(
                mean_max=float(np.mean([r.values["max_size"] for r in exact])),
                mean_greedy_ratio=float(np.mean(
                    [r.values["greedy_size"] / r.values["max_size"] for r in exact])),
                mean_repeated_ratio=float(np.mean(
                    [r.values["repeated_size"] / r.values["max_size"] for r in exact])))
    return out


def summarize(cfg, records):
    groups = _by_n(records)
    summary = {
        "schema": "v1",
        "config": cfg.to_dict(),
        "generator": GENERATOR_NAME,
        "per_n": [_summary_for(cfg, n, groups[n]) for n in cfg.n_grid if n in groups],
    }
    if cfg.kind == "AvgFptDiagnostic":
        summary["avgfpt"] = avgfpt_diagnostic(records, cfg.c, cfg.n_grid)
    return summary


def greedy_gap_experiment(cfg, threads=None):
    """Greedy versus repeated greedy versus exact maximum clique sizes."""
    if cfg.kind != "GreedyGap":
        raise ConfigError(f"expected a GreedyGap config, got {cfg.kind}")
    records, summary = run_experiment(cfg, threads)
    return records, summary


def _header_lines(cfg):
    return [
        "# avgclique trial records v1",
        "# config: " + json.dumps(cfg.to_dict(), sort_keys=True),
        "# generator: " + GENERATOR_NAME,
    ]


def records_to_csv(cfg, records):
    """CSV text: provenance comment lines, a header row, one row per trial."""
    buf = io.StringIO()
    for line in _header_lines(cfg):
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BASE_COLUMNS + COLUMNS[cfg.kind])
    for r in sorted(records, key=lambda r: (r.n, r.trial)):
        writer.writerow(r.row(cfg.kind))
    return buf.getvalue()


def _cell(text):
    if text == "":
        return ""
    try:
        return int(text)
    except ValueError:
        return text


def records_from_csv(text):
    """Parse ``records_to_csv`` output back into ``(config, records)``."""
    lines = text.splitlines()
    cfg = None
    body = []
    for line in lines:
        if line.startswith("# config: "):
            cfg = ExperimentConfig.from_json(line[len("# config: "):])
        elif not line.startswith("#"):
            body.append(line)
    if cfg is None:
        raise ConfigError("CSV has no embedded config line")
    reader = csv.reader(body)
    header = next(reader)
    records = []
    for row in reader:
        cells = dict(zip(header, (_cell(x) for x in row)))
        records.append(TrialRecord(cells["n"], cells["k"], cells["trial"], cells["stream"],
                                   {c: cells[c] for c in COLUMNS[cfg.kind]}))
    return cfg, records


def write_outputs(cfg, records, summary, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "trials.csv")
    json_path = os.path.join(out_dir, "summary.json")
    with open(csv_path, "w", newline="") as fh:
        fh.write(records_to_csv(cfg, records))
    report = dict(summary, kernels="numba" if NUMBA_ENABLED else "numpy")
    with open(json_path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path, json_path
