"""Immutable undirected graphs, generators, clusters and distance helpers."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

VertexId = int
LabelAssignment = Mapping[int, int]


class Graph:
    """Undirected simple graph with distinct integer vertex IDs.

    Instances are immutable: adjacency is exposed as a read-only mapping of
    frozensets, so a graph can be shared freely between threads and runs.
    """

    __slots__ = ("_adj", "_vertices", "_m", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {}
        for v in vertices:
            v = _as_vertex(v)
            adj.setdefault(v, set())
        for u, v in edges:
            u, v = _as_vertex(u), _as_vertex(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._vertices = tuple(sorted(adj))
        self._adj = MappingProxyType({v: frozenset(adj[v]) for v in self._vertices})
        self._m = sum(len(nb) for nb in self._adj.values()) // 2
        self._hash = None

    @classmethod
    def from_adjacency(cls, adjacency: Mapping[int, Iterable[int]]) -> "Graph":
        """Build from ``{v: neighbors}``; the mapping must be symmetric."""
        edges = []
        for u, nbrs in adjacency.items():
            for v in nbrs:
                if u not in adjacency.get(v, ()):
                    raise ValueError(f"asymmetric adjacency: {u}->{v} without {v}->{u}")
                if u < v:
                    edges.append((u, v))
        return cls(adjacency.keys(), edges)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def adjacency(self) -> Mapping[int, frozenset[int]]:
        return self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    @property
    def max_degree(self) -> int:
        return max((len(nb) for nb in self._adj.values()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return [(u, v) for u in self._vertices for v in sorted(self._adj[u]) if u < v]

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._vertices)

    def __iter__(self):
        return iter(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and dict(self._adj) == dict(other._adj)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(self.edges())))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __setattr__(self, name, value):
        if name == "_hash" or not hasattr(self, name):
            object.__setattr__(self, name, value)
        else:
            raise AttributeError("Graph is immutable")


def _as_vertex(v) -> int:
    iv = int(v)
    if iv != v or iv < 0:
        raise ValueError(f"vertex IDs must be non-negative integers, got {v!r}")
    return iv


@dataclass(frozen=True)
class Cluster:
    members: frozenset[int]
    label: int

    def __post_init__(self):
        if not self.members:
            raise ValueError("cluster must be non-empty")


@dataclass(frozen=True)
class NetworkDecomposition:
    """A label assignment together with its claimed ``(d, c)`` parameters.

    ``clusters`` is derived from the assignment when omitted.
    """

    assignment: Mapping[int, int]
    d: int
    c: int
    clusters: tuple[Cluster, ...] = field(default=())

    @classmethod
    def from_labels(cls, g: Graph, labels: Mapping[int, int], d: int, c: int) -> "NetworkDecomposition":
        labels = MappingProxyType(dict(labels))
        return cls(labels, d, c, tuple(extract_clusters(g, labels)))


def check_assignment(g: Graph, f: Mapping[int, int]) -> None:
    """Raise ``ValueError`` unless ``f`` is total on ``g`` with positive labels."""
    missing = [v for v in g.vertices if v not in f]
    if missing:
        raise ValueError(f"label assignment is partial: {len(missing)} vertices unlabeled, e.g. {missing[:5]}")
    bad = [v for v in g.vertices if not isinstance(f[v], (int, np.integer)) or f[v] < 1]
    if bad:
        raise ValueError(f"labels must be positive integers; offending vertices {bad[:5]}")


# --- generators -----------------------------------------------------------


def generate_gnp(n: int, p: float, seed=None) -> Graph:
    """Erdős–Rényi G(n, p) on vertices ``0..n-1``; deterministic given ``seed``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph(range(n), zip(iu[keep].tolist(), ju[keep].tolist()))


def generate_clique_path(k1: int, k2: int, length: int) -> Graph:
    """Disjoint cliques K_k1 and K_k2 joined by a path with ``length`` edges.

    K_k1 occupies ``0..k1-1`` and K_k2 occupies ``k1..k1+k2-1``; the path runs
    from vertex ``k1-1`` to vertex ``k1`` through ``length-1`` fresh vertices.
    """
    if k1 < 1 or k2 < 1 or length < 1:
        raise ValueError("clique sizes and path length must be >= 1")
    first = list(range(k1))
    second = list(range(k1, k1 + k2))
    edges = [(a, b) for i, a in enumerate(first) for b in first[i + 1:]]
    edges += [(a, b) for i, a in enumerate(second) for b in second[i + 1:]]
    inner = list(range(k1 + k2, k1 + k2 + length - 1))
    path = [k1 - 1, *inner, k1]
    edges += list(zip(path, path[1:]))
    return Graph(range(k1 + k2 + length - 1), edges)


def generate_random_regular(n: int, d: int, seed=None, max_tries: int = 100) -> Graph:
    """Random d-regular graph by stub pairing with rejection of loops and repeats.

    Pairs that would create a loop or a parallel edge are redrawn a bounded
    number of times; the whole pairing restarts when a dead end is hit.
    """
    if n * d % 2 or d >= n:
        raise ValueError("need n*d even and d < n")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        edges: set[tuple[int, int]] = set()
        stubs = np.repeat(np.arange(n), d)
        rng.shuffle(stubs)
        pending = stubs.tolist()
        ok = True
        while pending:
            u = pending.pop()
            for _attempt in range(50):
                j = int(rng.integers(len(pending)))
                v = pending[j]
                e = (min(u, v), max(u, v))
                if u != v and e not in edges:
                    pending[j] = pending[-1]
                    pending.pop()
                    edges.add(e)
                    break
            else:
                ok = False
                break
        if ok:
            return Graph(range(n), edges)
    raise RuntimeError("failed to sample a simple regular graph")


def complete_graph(n: int) -> Graph:
    return Graph(range(n), [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


# --- distances --------------------------------------------------------------


def bfs_distances(g: Graph, source: int, limit: int | None = None) -> dict[int, int]:
    """Hop distances from ``source`` to every vertex within ``limit`` hops."""
    if source not in g:
        raise KeyError(f"unknown vertex {source}")
    dist = {source: 0}
    frontier = deque([source])
    adj = g.adjacency
    while frontier:
        u = frontier.popleft()
        du = dist[u]
        if limit is not None and du >= limit:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = du + 1
                frontier.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> int | None:
    """Shortest-path length, or ``None`` when ``v`` is unreachable from ``u``."""
    if v not in g:
        raise KeyError(f"unknown vertex {v}")
    return bfs_distances(g, u).get(v)


def r_hop_neighborhood(g: Graph, v: int, r: int) -> frozenset[int]:
    if r < 0:
        raise ValueError("radius must be non-negative")
    return frozenset(bfs_distances(g, v, limit=r))


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    s = frozenset(s)
    outside = s - set(g.vertices)
    if outside:
        raise ValueError(f"vertices not in graph: {sorted(outside)[:5]}")
    adj = g.adjacency
    return Graph(s, [(u, w) for u in s for w in adj[u] if u < w and w in s])


def connected_components(g: Graph) -> list[frozenset[int]]:
    seen: set[int] = set()
    comps = []
    for v in g.vertices:
        if v not in seen:
            comp = frozenset(bfs_distances(g, v))
            seen |= comp
            comps.append(comp)
    return comps


# --- clusters ---------------------------------------------------------------


def extract_clusters(g: Graph, f: Mapping[int, int]) -> list[Cluster]:
    """Maximal connected same-label vertex sets, ordered by smallest member."""
    check_assignment(g, f)
    adj = g.adjacency
    seen: set[int] = set()
    clusters = []
    for v in g.vertices:
        if v in seen:
            continue
        lab = f[v]
        members = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in members and f[w] == lab:
                    members.add(w)
                    stack.append(w)
        seen |= members
        clusters.append(Cluster(frozenset(members), int(lab)))
    return clusters


def cluster_diameter(g: Graph, cl: Cluster, strong: bool = True) -> int:
    """Diameter of a cluster.

    With ``strong=True`` distances are measured inside ``G(members)``; with
    ``strong=False`` they are measured in ``g`` (weak diameter).
    """
    members = cl.members
    host = induced_subgraph(g, members) if strong else g
    best = 0
    for v in members:
        dist = bfs_distances(host, v)
        missing = members.difference(dist)
        if missing:
            raise ValueError(f"cluster with label {cl.label} is disconnected (vertex {v} cannot reach {min(missing)})")
        best = max(best, max(dist[u] for u in members))
    return best
