"""Average-case k-Clique deciders for Erdos-Renyi random graphs."""
from ._jit import NUMBA_ENABLED
from .dimacs import parse_dimacs, serialize_dimacs
from .errors import AvgCliqueError, ConfigError, DomainError, MalformedInputError
from .gnp import (
    NaturalDistribution,
    RngSeed,
    dependency_degree_bound,
    eval_p,
    expected_clique_count,
    jr_tail_bound,
    lemma1_bound,
    prob_no_elementary_clique_exact,
    s0_threshold,
    s1_threshold,
    sample_gnp,
)
from .graph import CliqueCensus, Graph, count_cliques_by_size, is_clique, max_clique_size_bruteforce
from .harness import ExperimentConfig, run_experiment
from .maximal import count_maximal_cliques, enumerate_pivot_backtracking, enumerate_vertex_incremental
from .solvers import (
    DecisionResult,
    Path,
    adaptive_decide,
    algorithm_A,
    algorithm_B,
    brute_force_decide,
    elementary_clique_scan,
    greedy_clique,
    repeated_greedy,
)

__version__ = "0.1.0"
