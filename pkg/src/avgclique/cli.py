"""Command-line front end.

Exit codes: 0 success, 1 a "no" answer from ``decide``, 2 usage error,
3 runtime or input error.  Errors go to stderr prefixed with ``error:``.
"""
import argparse
import json
import math
import os
import sys

from .dimacs import parse_dimacs, serialize_dimacs
from .errors import AvgCliqueError
from .gnp import (
    NaturalDistribution,
    RngSeed,
    delta_bound_applies,
    dependency_degree_bound,
    expected_clique_count,
    expected_clique_upper_bound,
    jr_tail_bound,
    lemma1_bound,
    prob_no_elementary_clique_exact,
    s0_threshold,
    s1_threshold,
    sample_gnp,
)
from .graph import count_cliques_by_size
from .harness import ExperimentConfig, run_experiment, write_outputs
from .maximal import ENUMERATORS
from .solvers import (
    SOLVERS,
    adaptive_decide,
    algorithm_A,
    algorithm_B,
    brute_force_decide,
    greedy_decide,
)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _distribution(text):
    try:
        return NaturalDistribution.from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"--dist is not valid JSON: {exc}") from None
    except AvgCliqueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _u64(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return value


def build_parser():
    parser = _Parser(prog="avgclique", description="Average-case k-Clique deciders on G(n, p).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sample", help="draw a G(n, p) graph and print it as DIMACS")
    p.add_argument("--dist", type=_distribution, required=True,
                   help='distribution JSON, e.g. \'{"kind":"constant","p":0.5}\'')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--stream", type=_u64, default=0)

    p = sub.add_parser("decide", help="decide whether the graph has a k-clique")
    p.add_argument("--algo", choices=SOLVERS, default="auto")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--input", help="DIMACS file (default: stdin)")
    p.add_argument("--dist", type=_distribution, help="distribution the graph came from (needed for auto)")
    p.add_argument("--full-enumeration", action="store_true",
                   help="algorithm B: enumerate every maximal clique")
    p.add_argument("--restarts", type=int, default=100, help="greedy: number of restarts")
    p.add_argument("--seed", type=_u64, default=0, help="greedy: restart seed")
    p.add_argument("--timing", action="store_true", help="include wall_time in the output")

    p = sub.add_parser("enumerate", help="print every maximal clique, one per line, 1-based")
    p.add_argument("--input", help="DIMACS file (default: stdin)")
    p.add_argument("--method", choices=sorted(ENUMERATORS), default="incremental")

    p = sub.add_parser("census", help="count cliques of every size")
    p.add_argument("--input", help="DIMACS file (default: stdin)")
    p.add_argument("--max-n-guard", type=int, default=20)
    p.add_argument("--force", action="store_true", help="ignore --max-n-guard")

    p = sub.add_parser("experiment", help="run a Monte-Carlo experiment from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("formulas", help="evaluate the closed-form quantities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--s", type=int, required=True, help="clique size for the mean and tail bound")
    p.add_argument("--k", type=int, help="block size for the elementary-clique probabilities")
    p.add_argument("--g", type=float, help="exponent g(n); default -log_n(p)")
    p.add_argument("--c-g", type=float, help="limit of g(n), for the s0/s1 thresholds")
    p.add_argument("--t", type=float, action="append", default=[], help="tail deviation (repeatable)")
    return parser


def _read_graph(path):
    if path is None:
        return parse_dimacs(sys.stdin.buffer.read())
    with open(path, "rb") as fh:
        return parse_dimacs(fh.read())


def _threads(value):
    if value is not None:
        return max(1, value)
    env = os.environ.get("AVGCLIQUE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _dump(obj, out):
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_sample(args, out):
    graph = sample_gnp(args.dist, args.n, RngSeed(args.seed, args.stream))
    out.write(serialize_dimacs(graph))
    return EXIT_OK


def cmd_decide(args, out):
    if args.algo == "auto" and args.dist is None:
        raise UsageError("decide --algo auto needs --dist")
    graph = _read_graph(args.input)
    short_circuit = not args.full_enumeration
    if args.algo == "auto":
        result = adaptive_decide(graph, args.k, args.dist, short_circuit=short_circuit)
    elif args.algo == "A":
        g_n = args.dist.g_at(graph.n) if args.dist and args.dist.kind != "zero" and graph.n >= 2 else None
        result = algorithm_A(graph, args.k, g_n)
    elif args.algo == "B":
        result = algorithm_B(graph, args.k, short_circuit=short_circuit)
    elif args.algo == "brute":
        result = brute_force_decide(graph, args.k)
    else:
        result = greedy_decide(graph, args.k, args.restarts, RngSeed(args.seed))
    _dump(result.to_dict(one_based=True, timing=args.timing), out)
    return EXIT_OK if result.answer else EXIT_NO


def cmd_enumerate(args, out):
    graph = _read_graph(args.input)
    for clique in ENUMERATORS[args.method](graph):
        out.write(" ".join(str(v + 1) for v in clique) + "\n")
    return EXIT_OK


def cmd_census(args, out):
    graph = _read_graph(args.input)
    if graph.n > args.max_n_guard and not args.force:
        raise AvgCliqueError(
            f"graph has {graph.n} vertices, above --max-n-guard {args.max_n_guard}; pass --force")
    _dump(count_cliques_by_size(graph).to_dict(), out)
    return EXIT_OK


def cmd_experiment(args, out):
    with open(args.config) as fh:
        cfg = ExperimentConfig.from_json(fh.read())
    records, summary = run_experiment(cfg, threads=_threads(args.threads))
    csv_path, json_path = write_outputs(cfg, records, summary, args.out_dir)
    _dump({"schema": "v1", "records": csv_path, "summary": json_path, "trials": len(records)}, out)
    return EXIT_OK


def cmd_formulas(args, out):
    n, p, s = args.n, args.p, args.s
    g_n = args.g
    if g_n is None and n >= 2 and p > 0:
        g_n = -math.log(p) / math.log(n)
    report = {"schema": "v1", "n": n, "p": p, "s": s, "g_n": g_n,
              "mu_s": expected_clique_count(n, p, s)}
    if g_n is not None:
        report["mu_s_upper_bound"] = expected_clique_upper_bound(n, g_n, s)
    if args.k is not None:
        entry = {"k": args.k, "exact": prob_no_elementary_clique_exact(n, args.k, p)}
        if g_n is not None:
            bound = lemma1_bound(n, args.k, g_n)
            entry.update(bound=bound.value, log_bound=bound.log_value,
                         hypothesis_holds=bound.hypothesis_holds)
        report["no_elementary_clique"] = entry
    if args.c_g is not None:
        report["s0"] = s0_threshold(args.c_g)
        report["s1"] = s1_threshold(args.c_g)
    delta = dependency_degree_bound(n, s)
    report["delta"] = {"exact": delta.exact, "bound": delta.bound,
                       "bound_applies": delta_bound_applies(n, s)}
    mu = report["mu_s"]
    if args.t and mu > 0:
        report["tail_bound"] = [{"t": t, "bound": jr_tail_bound(mu, t, max(delta.bound, 1))}
                                for t in args.t]
    _dump(report, out)
    return EXIT_OK


COMMANDS = {
    "sample": cmd_sample,
    "decide": cmd_decide,
    "enumerate": cmd_enumerate,
    "census": cmd_census,
    "experiment": cmd_experiment,
    "formulas": cmd_formulas,
}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AvgCliqueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
