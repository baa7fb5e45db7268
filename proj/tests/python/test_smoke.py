"""Smoke tests for the python bindings."""

import pytest

bcgp = pytest.importorskip("bcgp")


def test_complete_edge_count():
    assert bcgp.complete_edge_count(100) == 4950


def test_graph_roundtrip():
    g = bcgp.Graph(4, [(0, 1), (1, 2)])
    assert g.n == 4
    assert g.edge_count == 2
    assert g.has_edge(2, 1)
    assert not g.has_edge(0, 3)
    h = bcgp.Graph.from_edge_list(g.to_edge_list())
    assert h.edges() == g.edges()


def test_densities():
    k4 = bcgp.Graph.complete(4)
    assert bcgp.one_density_str(k4) == "2"
    assert bcgp.max_one_density_str(k4) == "2"
    assert bcgp.is_strictly_one_balanced(k4)
    p52 = bcgp.path_power(5, 2)
    assert bcgp.max_one_density_str(p52) == "7/4"


def test_sampling_is_seeded():
    a = bcgp.sample_process_prefix(10, 20, 7)
    b = bcgp.sample_process_prefix(10, 20, 7)
    assert a == b
    assert len(a) == 20
    g = bcgp.sample_gnm(8, 5, 3)
    assert g.edge_count == 5


def test_checkers():
    k4 = bcgp.Graph.complete(4)
    k3 = bcgp.Graph.complete(3)
    assert bcgp.count_copies_at(k4, k3, 0) == 3
    found, copies = bcgp.has_f_factor(bcgp.Graph.complete(6), k3)
    assert found
    assert len(copies) == 2
    assert bcgp.verify_ham_power(bcgp.Graph.complete(5), [0, 1, 2, 3, 4], 2)
    assert bcgp.min_degree(k4) == 3
    assert bcgp.is_connected(k4)


def test_budget_exponent_endpoints():
    assert bcgp.budget_exponent("clique_factor", 3, 4 / 3) == pytest.approx(4 / 3)
    assert bcgp.budget_exponent("clique_factor", 3, 2.0) == pytest.approx(1.0)
    assert bcgp.budget_exponent("ham_power", 2, 1.5) == pytest.approx(1.5)


def test_oracle():
    num, den = bcgp.optimal_success(4, 3, 2, "triangle")
    assert (num, den) == (0, 1)
    num, den = bcgp.optimal_success(3, 1, 1, "contains_edge")
    assert (num, den) == (1, 1)


def test_run_simulation():
    cfg = """
[process]
n = 30
t = 50
trials = 10

[strategy]
name = buy_all
budget = 50

[checker]
type = contains_edge
"""
    out = bcgp.run_simulation(cfg, 42)
    assert out["trials"] == 10
    assert out["successes"] == 10
    assert out["errors"] == 0
    # determinism
    assert bcgp.run_simulation(cfg, 42) == out
