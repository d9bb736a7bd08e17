import json
import math

import pytest

from avgclique.errors import ConfigError, DomainError
from avgclique.gnp import NaturalDistribution as D, RngSeed, sample_gnp
from avgclique.graph import Graph
from avgclique.harness import (
    ExperimentConfig,
    TrialRecord,
    avgfpt_diagnostic,
    clique_proxy_threshold,
    clique_size_tail_sum,
    greedy_gap_experiment,
    greedy_gap_trial,
    records_from_csv,
    records_to_csv,
    run_experiment,
    summarize,
    typfpt_diagnostic,
    write_outputs,
)

from conftest import random_graph


def cfg(**kw):
    base = dict(kind="SolverCost", distribution=D.constant(0.5), n_grid=(10, 14), k=3, trials=6, seed=5)
    base.update(kw)
    return ExperimentConfig(**base)


@pytest.mark.parametrize("bad", [
    dict(kind="Nope"),
    dict(trials=0),
    dict(n_grid=()),
    dict(n_grid=(14, 10)),
    dict(k=-1),
    dict(seed=-3),
    dict(solver="magic"),
    dict(kind="ElementaryMiss", k=20),
    dict(kind="TailFrequency", t_grid=()),
    dict(kind="AvgFptDiagnostic"),
    dict(kind="TypFptDiagnostic"),
    dict(kind="GreedyGap", distribution=D.power_law(1)),
])
def test_config_validation(bad):
    with pytest.raises(ConfigError):
        cfg(**bad)


def test_config_json_round_trip():
    c = cfg(kind="TailFrequency", t_grid=(1, 2.5))
    assert ExperimentConfig.from_json(json.dumps(c.to_dict())) == c
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json('{"kind": "SolverCost"}')
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json(json.dumps(dict(c.to_dict(), extra=1)))
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json("{not json")


def test_zero_distribution_solver_cost():
    records, summary = run_experiment(cfg(distribution=D.zero(), n_grid=(10,), k=2, trials=1))
    (r,) = records
    assert r.values["answer"] == 0 and r.values["cost"] > 0
    assert r.values["path"] == "MaximalEnumeration"


def test_reproducible_csv():
    c = cfg(solver="A")
    a = records_to_csv(c, run_experiment(c)[0])
    b = records_to_csv(c, run_experiment(c)[0])
    assert a == b
    assert a.startswith("# avgclique trial records v1\n# config: ")


def test_csv_round_trip_reproduces_summary():
    c = cfg(kind="AvgFptDiagnostic", solver="A", c=2, trials=10)
    records, summary = run_experiment(c)
    c2, back = records_from_csv(records_to_csv(c, records))
    assert c2 == c
    assert back == records
    assert summarize(c2, back) == summary


def test_threads_match_serial():
    c = cfg(kind="CliqueCensusMean", n_grid=(12, 16), trials=9)
    serial, s1 = run_experiment(c, threads=1)
    parallel, s2 = run_experiment(c, threads=2)
    assert records_to_csv(c, serial) == records_to_csv(c, parallel)
    assert s1 == s2


def test_trials_use_distinct_streams():
    c = cfg(kind="CliqueCensusMean", n_grid=(20,), trials=20)
    records, _ = run_experiment(c)
    assert [r.stream for r in records] == list(range(20))
    assert len({r.values["edges"] for r in records}) > 1


def test_solver_cost_paths_and_oracle():
    records, summary = run_experiment(cfg())
    assert all(r.values["oracle_checked"] == 1 for r in records)
    for row in summary["per_n"]:
        assert sum(row["paths"].values()) == row["trials"]


def test_elementary_miss_summary():
    c = ExperimentConfig(kind="ElementaryMiss", distribution=D.constant(0.5), n_grid=(30,),
                         k=3, trials=2000, seed=1)
    (row,) = run_experiment(c)[1]["per_n"]
    assert row["exact"] == pytest.approx(0.875 ** 10)
    assert row["within_sigma"]


def test_avgfpt_small_normalized_means():
    c = cfg(kind="AvgFptDiagnostic", solver="A", c=4, n_grid=(10, 20, 40), trials=30)
    diag = run_experiment(c)[1]["avgfpt"]
    assert all(row["normalized_mean"] < 1 for row in diag["per_n"])
    assert diag["per_n"][-1]["partial_sum"] == pytest.approx(
        sum(row["normalized_mean"] for row in diag["per_n"]))


def test_avgfpt_sparse_recorded_only():
    c = cfg(kind="AvgFptDiagnostic", solver="B", distribution=D.power_law(0.5), c=21,
            n_grid=(20, 40, 80), trials=5)
    diag = run_experiment(c)[1]["avgfpt"]
    print("B under PowerLaw(0.5), c=21:", diag["verdict"],
          [f"{row['normalized_mean']:.2e}" for row in diag["per_n"]])
    assert diag["verdict"].endswith("on this grid")


def test_avgfpt_diagnostic_flags_growth():
    recs = [TrialRecord(n, 3, 0, 0, {"cost": n ** 3}) for n in (10, 20)]
    assert not avgfpt_diagnostic(recs, 2)["non_increasing"]
    assert avgfpt_diagnostic(recs, 3)["non_increasing"]


def test_typfpt_thresholds():
    c = ExperimentConfig(kind="TypFptDiagnostic", distribution=D.power_law(1), n_grid=(20,),
                         k=3, trials=20, seed=2)
    records, summary = run_experiment(c)
    assert typfpt_diagnostic(records, 0, measure="clique_total")[20]["fraction"] == 1
    assert typfpt_diagnostic(records, math.inf)[20]["fraction"] == 0
    assert typfpt_diagnostic(records, lambda n: -1.0)[20]["exceedances"] == 20
    (row,) = summary["per_n"]
    assert row["s1"] == 25
    assert row["clique_proxy_threshold"] == clique_proxy_threshold(20, 25)
    assert row["clique_proxy_exceedances"] == 0


def test_tail_sum_examples(k4):
    assert clique_size_tail_sum(k4, 3) == 5
    assert clique_size_tail_sum(k4, 3, method="maximal") == 5
    assert clique_size_tail_sum(Graph.empty(6), 2) == 0
    with pytest.raises(DomainError):
        clique_size_tail_sum(k4, 1)


def test_tail_sum_methods_agree(rng):
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 14), rng.random())
        s1 = rng.randint(2, 5)
        assert clique_size_tail_sum(g, s1) == clique_size_tail_sum(g, s1, method="maximal")


def test_greedy_gap_corridor():
    c = ExperimentConfig(kind="GreedyGap", distribution=D.constant(0.5), n_grid=(25,),
                         k=2, trials=200, seed=3)
    (row,) = greedy_gap_experiment(c)[1]["per_n"]
    assert 0.45 <= row["mean_greedy_ratio"] <= 0.85
    assert row["mean_greedy_ratio"] <= row["mean_repeated_ratio"] <= 1


def test_greedy_gap_extremes():
    c = ExperimentConfig(kind="GreedyGap", distribution=D.constant(1.0), n_grid=(12,), k=2, trials=3)
    (row,) = greedy_gap_experiment(c)[1]["per_n"]
    assert row["mean_greedy_ratio"] == 1.0
    sizes = greedy_gap_trial(Graph.empty(12), 5, RngSeed(0))
    assert sizes == {"greedy_size": 1, "repeated_size": 1, "max_size": 1}


def test_write_outputs(tmp_path):
    c = cfg(trials=2)
    records, summary = run_experiment(c)
    csv_path, json_path = write_outputs(c, records, summary, tmp_path / "out")
    report = json.loads(open(json_path).read())
    assert report["kernels"] in ("numba", "numpy")
    assert report["schema"] == "v1"
    assert records_from_csv(open(csv_path).read())[1] == records


def test_sample_depends_on_trial_stream():
    a = sample_gnp(D.constant(0.5), 30, RngSeed(1, 0))
    b = sample_gnp(D.constant(0.5), 30, RngSeed(1, 1))
    assert a != b


@pytest.mark.slow
def test_tail_sum_sparse_report():
    n, trials = 50, 10_000
    over = 0
    for t in range(trials):
        g = sample_gnp(D.power_law(1), n, RngSeed(77, t))
        over += clique_size_tail_sum(g, 3, method="maximal") > math.log2(n)
    # asymptotic claim; reported only
    print(f"PowerLaw(1), n=50, s1=3: Pr[tail sum > log2 n] ~ {over / trials:.4f}")
