"""Compiled and interpreted kernels must agree, costs included."""
import os
import subprocess
import sys

import numpy as np
import pytest

from avgclique import kernels
from avgclique._jit import NUMBA_ENABLED, python_impl

from conftest import random_graph


def _instances(rng, count=300):
    for _ in range(count):
        yield random_graph(rng, rng.randint(0, 22), rng.choice([0.1, 0.3, 0.5, 0.8, 1.0]))


def test_census_forms_agree(rng):
    dfs = python_impl(kernels.census_dfs)
    for g in _instances(rng):
        expected = kernels.census_levels(g.adj)
        assert np.array_equal(kernels.census_dfs(g.adj), expected)
        assert np.array_equal(dfs(g.adj), expected)


def test_elementary_scan_forms_agree(rng):
    loop = python_impl(kernels.elementary_scan_loop)
    for g in _instances(rng):
        for k in range(2, g.n + 1):
            expected = kernels.elementary_scan_numpy(g.adj, k)
            assert tuple(kernels.elementary_scan_loop(g.adj, k)) == expected
            assert tuple(loop(g.adj, k)) == expected


def test_brute_force_forms_agree(rng):
    loop = python_impl(kernels.brute_force_loop)
    for g in _instances(rng, 150):
        for k in range(1, min(g.n, 7) + 1):
            fa, wa, ca = kernels.brute_force_loop(g.adj, k)
            fb, wb, cb = loop(g.adj, k)
            assert (fa, ca) == (fb, cb)
            assert wa.tolist() == wb.tolist()


def test_brute_force_first_clique_is_lexicographic():
    adj = np.zeros((5, 5), dtype=bool)
    for u, v in [(1, 2), (1, 4), (2, 4), (0, 3), (0, 4), (3, 4)]:
        adj[u, v] = adj[v, u] = True
    found, witness, cost = kernels.brute_force_search(adj, 3)
    assert found and witness == (0, 3, 4)
    assert cost > 0


@pytest.mark.skipif(not NUMBA_ENABLED, reason="numba not active in this process")
def test_env_flag_selects_numpy_path():
    code = (
        "import numpy as np\n"
        "from avgclique import _jit, kernels\n"
        "from avgclique.gnp import NaturalDistribution, RngSeed, sample_gnp\n"
        "g = sample_gnp(NaturalDistribution.constant(0.5), 18, RngSeed(3))\n"
        "print(_jit.NUMBA_ENABLED, kernels.census_counts(g.adj).tolist(),"
        " kernels.elementary_scan(g.adj, 3))\n"
    )
    env = dict(os.environ, AVGCLIQUE_DISABLE_NUMBA="1")
    off = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    env["AVGCLIQUE_DISABLE_NUMBA"] = "0"
    on = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert off.stdout.startswith("False ")
    assert on.stdout.startswith("True ")
    assert off.stdout.split(" ", 1)[1] == on.stdout.split(" ", 1)[1]
