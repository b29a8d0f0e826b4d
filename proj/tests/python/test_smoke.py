import math

import pytest

import wrtlab


def test_build_id():
    assert wrtlab.build_id()


def test_grow_trees():
    t = wrtlab.grow_pat(wrtlab.constant_fitness(1.0, 1.0), 200, seed=1)
    assert len(t) == 200
    assert t.parents[0] == 0
    assert all(1 <= p < i for i, p in enumerate(t.parents[1:], start=2))
    assert sum(t.degrees) == 199
    assert t.height == max(t.depths)

    w = wrtlab.power_weights(1.0, 1.0, 100)
    a = wrtlab.grow_wrt(w, 100, seed=5)
    b = wrtlab.grow_wrt(w, 100, seed=5)
    assert a.trace == b.trace

    u = wrtlab.grow_pat(wrtlab.constant_fitness(1.0, 1.0), 50, seed=2, mode="definetti")
    assert len(u) == 50


def test_exact_oracles():
    f = wrtlab.constant_fitness(1.0, 1.0)
    assert wrtlab.pat_trace_probability(f, [1, 1]) == pytest.approx(2 / 3)
    assert wrtlab.wrt_mixture_trace_probability(f, [1, 2]) == pytest.approx(1 / 3)
    r = wrtlab.certify_theorem1(wrtlab.periodic_fitness(1.0, [0.0, 1.0]), 6)
    assert r["pass"] and r["max_abs_diff"] <= 1e-10
    c = wrtlab.certify_pagraph_coupling([1, 1], 2, 1.0, 3)
    assert c["pass"]


def test_limits_and_stats():
    assert wrtlab.ml_moment(0.5, 0.5, 1) == pytest.approx(math.sqrt(math.pi))
    assert wrtlab.ml_moment(0.5, 0.5, 2) == pytest.approx(4.0)
    assert wrtlab.height_constant(0.5) == pytest.approx(1.7956, abs=1e-4)
    assert wrtlab.height_constant(1.0) == pytest.approx(math.e)
    ones = wrtlab.power_weights(1.0, 1.0, 100000)
    assert wrtlab.measure_regime(ones) == "diffuse_boundary"
    assert wrtlab.mrca_probability(ones, 1) == pytest.approx(0.5, abs=1e-4)
    assert wrtlab.measure_regime(wrtlab.geometric_weights(0.5, 1000)) == "atomic"
    g = wrtlab.sample_ggp(2.0, 2.0, 3, seed=3)
    assert len(g) == 3 and g[0] < g[1] < g[2]


def test_urns_and_graphs():
    red, total = wrtlab.time_dependent_urn(1.0, 2.0, 1.0, 50, seed=4)
    assert len(red) == 51 and total[-1] == pytest.approx(53.0)
    red, total = wrtlab.immigration_urn(wrtlab.constant_fitness(1.0, 0.0), 10, seed=1)
    assert red[-1] == 10
    edges, degree = wrtlab.grow_pa_graph([1, 1], 2, 0.0, 20, seed=9)
    assert len(edges) == 2 * 19
    assert sum(degree) == 2 + 2 * len(edges)


def test_errors():
    with pytest.raises(ValueError):
        wrtlab.constant_fitness(-2.0, 1.0)
    with pytest.raises(ValueError):
        wrtlab.run_experiment({"model": {"type": "pat"}})


def test_experiment(tmp_path):
    cfg = {
        "model": {"type": "pat", "seq": {"kind": "constant_fitness", "a": 1, "b": 1}},
        "n": [100, 1000],
        "replicates": 10,
        "seed": 3,
        "output": str(tmp_path / "run"),
        "statistics": ["height", "root_degree"],
    }
    s = wrtlab.run_experiment(cfg)
    assert s["pass"]
    assert set(s["statistics"]) == {"height", "root_degree"}
    assert (tmp_path / "run.csv").read_text().startswith("replicate,n,height,root_degree\n")


def test_acceptance_oracle_criteria():
    r = wrtlab.run_acceptance("fast", only=[1, 12])
    assert [c["id"] for c in r["criteria"]] == [1, 12]
    assert r["pass"]
