"""Compiled kernels against their numpy / interpreted counterparts.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both forms are called in one process, so numba must be importable.  The
first compiled call (JIT warm-up) is excluded from the timings.
"""
import argparse
import time

import numpy as np

from avgclique import kernels
from avgclique._jit import NUMBA_ENABLED, python_impl
from avgclique.gnp import NaturalDistribution, RngSeed, sample_gnp


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    dense = sample_gnp(NaturalDistribution.constant(0.5), 40, RngSeed(1)).adj
    sparse = sample_gnp(NaturalDistribution.power_law(0.7), 300, RngSeed(1)).adj
    big = sample_gnp(NaturalDistribution.constant(0.5), 2000, RngSeed(1)).adj
    mid = sample_gnp(NaturalDistribution.constant(0.5), 60, RngSeed(2)).adj
    yield ("census G(40,1/2)",
           lambda: kernels.census_dfs(dense), lambda: kernels.census_levels(dense))
    yield ("census G(300,300^-0.7)",
           lambda: kernels.census_dfs(sparse), lambda: kernels.census_levels(sparse))
    yield ("elementary scan n=2000 k=8",
           lambda: kernels.elementary_scan_loop(big, 8), lambda: kernels.elementary_scan_numpy(big, 8))
    slow = python_impl(kernels.brute_force_loop)
    yield ("brute force G(60,1/2) k=9",
           lambda: kernels.brute_force_loop(mid, 9), lambda: slow(mid, 9))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not NUMBA_ENABLED:
        raise SystemExit("numba is disabled (AVGCLIQUE_DISABLE_NUMBA); nothing to compare")
    print(f"{'kernel':32} {'numba':>10} {'fallback':>10} {'speedup':>8}")
    for name, fast, slow in cases():
        a, b = fast(), slow()
        same = all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(
            a if isinstance(a, tuple) else (a,), b if isinstance(b, tuple) else (b,)))
        t_fast = best_of(fast, args.repeat)
        t_slow = best_of(slow, args.repeat)
        flag = "" if same else "  MISMATCH"
        print(f"{name:32} {t_fast * 1e3:9.2f}ms {t_slow * 1e3:9.2f}ms {t_slow / t_fast:7.1f}x{flag}")


if __name__ == "__main__":
    main()
