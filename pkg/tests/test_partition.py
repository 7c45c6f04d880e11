import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs
from localsim.algorithms import PartitionOutput, partition
from localsim.graph import Graph, complete_graph, generate_gnp, induced_subgraph
from localsim.verify import verify_dominating_set


def test_edgeless_graph():
    g = Graph(range(50))
    res = partition(g, seed=3)
    assert res.A == res.D
    assert res.B == frozenset(range(50)) - res.D


def test_complete_graph_with_a_mark():
    for seed in range(20):
        res = partition(complete_graph(16), seed=seed)
        if res.D:
            assert res.B == frozenset()
        else:
            assert res.A == frozenset()


def test_one_communication_round():
    res = partition(generate_gnp(100, 0.1, 1), seed=0)
    assert res.trace.communication_rounds == 1


@settings(max_examples=50)
@given(graphs(min_n=2, max_n=14, ids=True), st.integers(0, 2**31))
def test_partition_invariants(g, seed):
    res = partition(g, seed)
    assert res.A | res.B == frozenset(g.vertices)
    assert not res.A & res.B
    assert res.D <= res.A
    assert verify_dominating_set(induced_subgraph(g, res.A), res.D).passed
    # B vertices neither marked nor adjacent to a mark.
    assert all(not g.neighbors(v) & res.D for v in res.B)


def test_marking_rate():
    # Marks are Bernoulli(n^-1/2): 400 vertices x 50 seeds, expected 20 per run.
    g = Graph(range(400))
    sizes = [len(partition(g, seed=s).D) for s in range(50)]
    mean = sum(sizes) / len(sizes)
    assert abs(mean - 20) < 4 * math.sqrt(20 * (1 - 0.05) / 50)


def test_n_override_changes_marking_probability():
    g = Graph(range(200))
    small = sum(len(partition(g, seed=s, n=10_000).D) for s in range(20))
    large = sum(len(partition(g, seed=s).D) for s in range(20))
    assert small < large


def test_needs_two_vertices():
    with pytest.raises(ValueError):
        partition(Graph([0]))


def test_output_validation():
    with pytest.raises(ValueError):
        PartitionOutput("B", True)
    with pytest.raises(ValueError):
        PartitionOutput("C", False)
