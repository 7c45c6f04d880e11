import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.stats import binom

from conftest import graphs
from localsim.graph import (
    Cluster,
    Graph,
    NetworkDecomposition,
    bfs_distances,
    cluster_diameter,
    complete_graph,
    connected_components,
    cycle_graph,
    distance,
    extract_clusters,
    generate_clique_path,
    generate_gnp,
    generate_random_regular,
    induced_subgraph,
    path_graph,
    r_hop_neighborhood,
)
from localsim.verify import brute_force_chromatic


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


# --- construction ------------------------------------------------------------


def test_graph_is_immutable():
    g = path_graph(3)
    with pytest.raises(AttributeError):
        g._m = 7
    with pytest.raises(TypeError):
        g.adjacency[0] = frozenset()


def test_self_loop_and_bad_ids_rejected():
    with pytest.raises(ValueError):
        Graph([0], [(0, 0)])
    with pytest.raises(ValueError):
        Graph([-1])
    with pytest.raises(ValueError):
        Graph([1.5])


def test_duplicate_edges_collapse():
    g = Graph([0, 1], [(0, 1), (1, 0), (0, 1)])
    assert g.m == 1
    assert g.edges() == [(0, 1)]


def test_from_adjacency_requires_symmetry():
    assert Graph.from_adjacency({0: [1], 1: [0], 2: []}) == Graph([0, 1, 2], [(0, 1)])
    with pytest.raises(ValueError):
        Graph.from_adjacency({0: [1], 1: []})


def test_unknown_vertex():
    with pytest.raises(KeyError):
        path_graph(2).neighbors(5)


# --- generators ---------------------------------------------------------------


def test_gnp_extremes():
    g = generate_gnp(5, 0.0, seed=1)
    assert (g.n, g.m) == (5, 0)
    k4 = generate_gnp(4, 1.0, seed=1)
    assert k4.m == 6 and k4 == complete_graph(4)


def test_gnp_seed7_edge_count_window():
    # Binomial(4950, 1/2) leaves [2000, 2950] with probability ~7e-42.
    tail = binom.cdf(1999, 4950, 0.5) + binom.sf(2950, 4950, 0.5)
    assert tail < 1e-40
    g = generate_gnp(100, 0.5, seed=7)
    assert 2000 <= g.m <= 2950
    assert g.m == 2531


def test_gnp_edge_counts_over_seeds_match_binomial():
    counts = np.array([generate_gnp(60, 0.3, seed=s).m for s in range(200)])
    mean, sd = binom.mean(1770, 0.3), binom.std(1770, 0.3)
    assert abs(counts.mean() - mean) < 4 * sd / np.sqrt(len(counts))
    assert 0.6 < counts.std() / sd < 1.4


def test_gnp_invalid():
    with pytest.raises(ValueError):
        generate_gnp(0, 0.5)
    with pytest.raises(ValueError):
        generate_gnp(5, 1.5)


@given(st.integers(1, 40), st.floats(0, 1), st.integers(0, 2**32))
def test_gnp_deterministic(n, p, seed):
    assert generate_gnp(n, p, seed) == generate_gnp(n, p, seed)


@pytest.mark.parametrize(
    "k1,k2,length,n,chi",
    [(4, 3, 10, 16, 4), (1, 1, 1, 2, 2), (3, 3, 2, 7, 3)],
)
def test_clique_path(k1, k2, length, n, chi):
    g = generate_clique_path(k1, k2, length)
    assert g.n == n
    assert brute_force_chromatic(g)[0] == chi
    assert nx.is_connected(to_nx(g))


def test_clique_path_structure():
    g = generate_clique_path(4, 3, 10)
    h = to_nx(g)
    cliques = sorted(len(c) for c in nx.find_cliques(h) if len(c) > 2)
    assert cliques == [3, 4]
    # The path between the two cliques has length 10.
    k4 = next(c for c in nx.find_cliques(h) if len(c) == 4)
    k3 = next(c for c in nx.find_cliques(h) if len(c) == 3)
    assert min(nx.shortest_path_length(h, a, b) for a in k4 for b in k3) == 10


@pytest.mark.parametrize("n,d", [(10, 3), (50, 4), (500, 20)])
def test_random_regular(n, d):
    g = generate_random_regular(n, d, seed=3)
    assert g.n == n
    assert all(g.degree(v) == d for v in g.vertices)


def test_random_regular_parity():
    with pytest.raises(ValueError):
        generate_random_regular(5, 3, seed=0)


# --- distances ---------------------------------------------------------------


def test_distance_examples():
    g = Graph([0, 1, 2, 3], [(0, 1), (2, 3)])
    assert distance(g, 2, 2) == 0
    assert distance(path_graph(3), 0, 2) == 2
    assert distance(g, 0, 3) is None


def test_r_hop_examples():
    g = complete_graph(4)
    assert r_hop_neighborhood(g, 1, 0) == {1}
    assert r_hop_neighborhood(g, 1, 1) == {0, 1, 2, 3}
    assert r_hop_neighborhood(path_graph(10), 0, 3) == {0, 1, 2, 3}


@given(graphs(max_n=14, ids=True), st.integers(0, 5), st.data())
def test_r_hop_matches_distance_and_networkx(g, r, data):
    v = data.draw(st.sampled_from(g.vertices))
    hood = r_hop_neighborhood(g, v, r)
    assert hood == {u for u in g.vertices if (d := distance(g, v, u)) is not None and d <= r}
    assert hood == set(nx.single_source_shortest_path_length(to_nx(g), v, cutoff=r))


@given(graphs(max_n=12), st.data())
def test_distance_symmetric(g, data):
    u = data.draw(st.sampled_from(g.vertices))
    v = data.draw(st.sampled_from(g.vertices))
    assert distance(g, u, v) == distance(g, v, u)


def test_bfs_limit():
    assert bfs_distances(path_graph(6), 0, limit=2) == {0: 0, 1: 1, 2: 2}


# --- subgraphs, components -------------------------------------------------------


def test_induced_subgraph_examples():
    g = complete_graph(4)
    assert induced_subgraph(g, {0, 2, 3}) == Graph([0, 2, 3], [(0, 2), (0, 3), (2, 3)])
    assert induced_subgraph(g, set()).n == 0
    assert induced_subgraph(g, g.vertices) == g
    with pytest.raises(ValueError):
        induced_subgraph(g, {9})


@given(graphs(max_n=12, ids=True), st.data())
def test_induced_subgraph_preserves_adjacency(g, data):
    s = set(data.draw(st.lists(st.sampled_from(g.vertices), unique=True)))
    h = induced_subgraph(g, s)
    assert set(h.vertices) == s
    for u in s:
        for v in s:
            assert h.has_edge(u, v) == g.has_edge(u, v)


@given(graphs(max_n=14))
def test_components_match_networkx(g):
    assert sorted(map(sorted, connected_components(g))) == sorted(map(sorted, nx.connected_components(to_nx(g))))


# --- clusters -----------------------------------------------------------------


def test_extract_clusters_examples():
    assert extract_clusters(complete_graph(3), {0: 1, 1: 1, 2: 1}) == [Cluster(frozenset({0, 1, 2}), 1)]
    p3 = path_graph(3)
    assert [c.members for c in extract_clusters(p3, {0: 1, 1: 2, 2: 1})] == [{0}, {1}, {2}]
    p4 = path_graph(4)
    assert [set(c.members) for c in extract_clusters(p4, {0: 1, 1: 1, 2: 2, 3: 2})] == [{0, 1}, {2, 3}]


def test_extract_clusters_requires_total_labels():
    with pytest.raises(ValueError):
        extract_clusters(path_graph(3), {0: 1, 1: 1})


@given(graphs(max_n=12), st.data())
def test_clusters_partition_vertices(g, data):
    f = {v: data.draw(st.integers(1, 3)) for v in g.vertices}
    clusters = extract_clusters(g, f)
    members = [v for c in clusters for v in c.members]
    assert sorted(members) == list(g.vertices)
    for c in clusters:
        assert all(f[v] == c.label for v in c.members)
        assert nx.is_connected(to_nx(induced_subgraph(g, c.members)))


def test_cluster_diameter_examples():
    assert cluster_diameter(path_graph(3), Cluster(frozenset({1}), 1)) == 0
    assert cluster_diameter(complete_graph(4), Cluster(frozenset(range(4)), 1)) == 1
    assert cluster_diameter(path_graph(4), Cluster(frozenset(range(4)), 1)) == 3


def test_strong_vs_weak_diameter():
    # Members 0,1,2,3 of a 5-cycle: strong diameter 3 (path), weak diameter 2.
    g = cycle_graph(5)
    cl = Cluster(frozenset({0, 1, 2, 3}), 1)
    assert cluster_diameter(g, cl, strong=True) == 3
    assert cluster_diameter(g, cl, strong=False) == 2


def test_cluster_diameter_disconnected():
    with pytest.raises(ValueError):
        cluster_diameter(path_graph(3), Cluster(frozenset({0, 2}), 1))


def test_decomposition_from_labels():
    nd = NetworkDecomposition.from_labels(path_graph(4), {0: 1, 1: 1, 2: 2, 3: 2}, d=1, c=2)
    assert len(nd.clusters) == 2
    assert nd.assignment[3] == 2
