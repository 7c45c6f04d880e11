import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs
from localsim.algorithms import WhpFailure, color_bounded_degree, color_palette_size
from localsim.algorithms.color import default_round_budget
from localsim.graph import Graph, complete_graph, generate_random_regular
from localsim.verify import verify_coloring


def test_palette_sizes():
    assert color_palette_size(20, 0.5) == 90
    assert color_palette_size(16, 0.5) == 64
    assert color_palette_size(1, 0.25) == 1
    assert default_round_budget(0.25, 0.5) == 32


def test_edgeless_terminates_in_round_one():
    res = color_bounded_degree(Graph(range(10)), 1, 0.5, seed=0)
    assert set(res.trace.terminated_round.values()) == {1}
    assert res.max_attempts == 1


def test_unit_degree_bound_gives_one_color():
    # 1^(1+eps) = 1 for every eps, so K2 with delta_bound=1 is never colorable.
    assert all(color_palette_size(1, eps) == 1 for eps in (0.1, 0.5, 1.0, 3.0))


def test_k2_with_room():
    for seed in range(20):
        res = color_bounded_degree(complete_graph(2), 2, 0.6, seed=seed)
        assert res.palette == 4
        assert verify_coloring(complete_graph(2), res.colors).passed


def test_budget_exhaustion_reports_partial():
    with pytest.raises(WhpFailure) as exc:
        # A single color for K2 can never succeed.
        color_bounded_degree(complete_graph(2), 1, 0.5, round_budget=3, seed=0)
    err = exc.value
    assert err.stage == "color" and err.kind == "round-budget-exhausted"
    assert err.partial.colors == {}
    assert err.trace.rounds_executed == 4


def test_degree_bound_checked():
    with pytest.raises(ValueError):
        color_bounded_degree(complete_graph(4), 2, 0.5)


@settings(max_examples=40)
@given(graphs(max_n=14, ids=True), st.integers(0, 2**31))
def test_colorings_legal_and_in_palette(g, seed):
    bound = max(g.max_degree, 1)
    try:
        res = color_bounded_degree(g, bound, 0.5, round_budget=40, seed=seed)
    except WhpFailure:
        return
    assert verify_coloring(g, res.colors).passed
    assert all(1 <= c <= res.palette for c in res.colors.values())


def test_regular_graph_terminates_fast():
    g = generate_random_regular(500, 20, seed=2)
    res = color_bounded_degree(g, 20, 0.5, round_budget=10, seed=5)
    rep = verify_coloring(g, res.colors)
    assert rep.passed and rep.measured["max_color"] <= 90
    assert res.trace.rounds_executed <= 11


def test_finalized_neighbors_block_colors():
    # Star: the center must avoid every leaf that finalized earlier.
    g = Graph(range(6), [(0, i) for i in range(1, 6)])
    for seed in range(30):
        res = color_bounded_degree(g, 5, 0.3, round_budget=50, seed=seed)
        assert verify_coloring(g, res.colors).passed
