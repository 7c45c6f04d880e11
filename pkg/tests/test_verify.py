import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs
from localsim.algorithms import exact_min_coloring
from localsim.graph import Graph, NetworkDecomposition, complete_graph, cycle_graph, generate_gnp, path_graph
from localsim.verify import (
    VerifierReport,
    brute_force_chromatic,
    verify_coloring,
    verify_decomposition,
    verify_distance3_labels,
    verify_dominating_set,
)


def test_coloring_examples():
    k3 = complete_graph(3)
    rep = verify_coloring(k3, {0: 1, 1: 2, 2: 3})
    assert rep.passed and rep.measured["color_count"] == 3
    bad = verify_coloring(k3, {0: 1, 1: 1, 2: 2})
    assert not bad.passed and bad.violations == [("monochromatic-edge", (0, 1))]
    rep = verify_coloring(Graph(range(4)), {v: 1 for v in range(4)})
    assert rep.passed and rep.measured["color_count"] == 1


def test_partial_coloring_rejected():
    with pytest.raises(ValueError):
        verify_coloring(path_graph(3), {0: 1, 1: 2})


def test_decomposition_examples():
    g = path_graph(5)
    ok = verify_decomposition(g, NetworkDecomposition.from_labels(g, {v: v + 1 for v in range(5)}, 0, 5))
    assert ok.passed and ok.measured["max_cluster_diameter"] == 0
    bad = verify_decomposition(g, NetworkDecomposition.from_labels(g, {v: 1 for v in range(5)}, 2, 1))
    assert not bad.passed
    assert bad.violations == [("cluster-diameter", (0, 4))]


def test_decomposition_label_range():
    g = path_graph(2)
    rep = verify_decomposition(g, NetworkDecomposition.from_labels(g, {0: 1, 1: 3}, 0, 2))
    assert ("label-out-of-range", (1, 3)) in rep.violations


def test_weak_diameter_option():
    g = cycle_graph(5)
    nd = NetworkDecomposition.from_labels(g, {0: 1, 1: 1, 2: 1, 3: 1, 4: 2}, 2, 2)
    assert not verify_decomposition(g, nd).passed
    assert verify_decomposition(g, nd, strong=False).passed


def test_dominating_set_examples():
    g = generate_gnp(10, 0.3, seed=1)
    assert verify_dominating_set(g, g.vertices).passed
    star = Graph(range(5), [(0, i) for i in range(1, 5)])
    rep = verify_dominating_set(star, {0})
    assert rep.passed and rep.measured["size"] == 1
    bad = verify_dominating_set(path_graph(5), {0})
    assert bad.violations == [("undominated", [2, 3, 4])]


def test_distance3_examples():
    g = path_graph(5)
    assert verify_distance3_labels(g, {2}, {v: 1 for v in g.vertices}).passed
    assert not verify_distance3_labels(g, {0, 2}, {0: 1, 2: 1}).passed
    assert verify_distance3_labels(g, {0, 4}, {0: 1, 4: 1}).passed


def test_report_json():
    rep = VerifierReport([("x", (1, 2))], {"a": frozenset({2, 1})})
    assert rep.to_json() == {"passed": False, "violations": [["x", [1, 2]]], "measured": {"a": [1, 2]}}


# --- chromatic oracle -------------------------------------------------------------


def test_oracle_examples():
    assert brute_force_chromatic(cycle_graph(5))[0] == 3
    k33 = Graph(range(6), [(a, b) for a in range(3) for b in range(3, 6)])
    assert brute_force_chromatic(k33)[0] == 2
    assert brute_force_chromatic(Graph())[0] == 0


@settings(max_examples=120)
@given(graphs(max_n=9, ids=True))
def test_oracle_witness_is_optimal_coloring(g):
    chi, witness = brute_force_chromatic(g)
    if g.n:
        assert verify_coloring(g, witness).passed
    assert len(set(witness.values())) == chi


def test_oracle_against_networkx_small_graph_atlas():
    # The first 300 atlas graphs (up to 6 vertices); chi by exhaustive search over colorings.
    for h in nx.graph_atlas_g()[1:300]:
        g = Graph(h.nodes, h.edges)
        chi = next(
            k
            for k in range(g.n + 1)
            if any(all(c[u] != c[v] for u, v in g.edges()) for c in itertools.product(range(k), repeat=g.n))
        )
        assert brute_force_chromatic(g)[0] == chi


def test_oracle_equivalence_200_random_8_vertex_graphs():
    rng = random.Random(8)
    for i in range(200):
        g = generate_gnp(8, rng.uniform(0.1, 0.9), seed=i)
        assert brute_force_chromatic(g)[0] == exact_min_coloring(g)[1]


def test_oracle_cap():
    with pytest.raises(ValueError):
        brute_force_chromatic(complete_graph(21))
