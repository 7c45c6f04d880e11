"""Read-only checkers for colorings, decompositions and dominating sets.

``brute_force_chromatic`` deliberately shares no code with the backtracking
solver in :mod:`localsim.algorithms.exact`: it counts k-colorings by
inclusion-exclusion over independent sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

import numpy as np

from .graph import Graph, NetworkDecomposition, bfs_distances, cluster_diameter, extract_clusters


@dataclass
class VerifierReport:
    violations: list[tuple[str, Any]] = field(default_factory=list)
    measured: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict[str, Any]:
        from .formats import jsonable

        return {"passed": self.passed, "violations": jsonable(self.violations), "measured": jsonable(self.measured)}


def _require_total(g: Graph, f: Mapping[int, Any], what: str) -> None:
    missing = [v for v in g.vertices if v not in f or f[v] is None]
    if missing:
        raise ValueError(f"{what} is partial: missing {missing[:5]}")


def verify_coloring(g: Graph, coloring: Mapping[int, int]) -> VerifierReport:
    _require_total(g, coloring, "coloring")
    report = VerifierReport()
    for u, v in g.edges():
        if coloring[u] == coloring[v]:
            report.violations.append(("monochromatic-edge", (u, v)))
    values = [coloring[v] for v in g.vertices]
    report.measured["color_count"] = len(set(values))
    report.measured["max_color"] = max(values, default=0)
    return report


def verify_decomposition(g: Graph, nd: NetworkDecomposition, strong: bool = True) -> VerifierReport:
    """Check label range ``1..c`` and cluster diameters ``<= d``.

    ``strong=False`` measures diameters in ``g`` instead of inside clusters.
    """
    _require_total(g, nd.assignment, "decomposition")
    report = VerifierReport()
    f = nd.assignment
    for v in g.vertices:
        if not 1 <= f[v] <= nd.c:
            report.violations.append(("label-out-of-range", (v, f[v])))
    clusters = extract_clusters(g, f)
    worst = 0
    for cl in clusters:
        diam = cluster_diameter(g, cl, strong=strong)
        worst = max(worst, diam)
        if diam > nd.d:
            report.violations.append(("cluster-diameter", (min(cl.members), diam)))
    report.measured.update(
        max_cluster_diameter=worst,
        label_count=len({f[v] for v in g.vertices}),
        cluster_count=len(clusters),
        max_cluster_size=max((len(cl.members) for cl in clusters), default=0),
    )
    return report


def verify_dominating_set(g: Graph, s: Iterable[int]) -> VerifierReport:
    s = frozenset(s)
    report = VerifierReport()
    undominated = sorted(v for v in g.vertices if v not in s and not (g.neighbors(v) & s))
    if undominated:
        report.violations.append(("undominated", undominated))
    report.measured["size"] = len(s)
    return report


def verify_distance3_labels(gA: Graph, D: Iterable[int], labels: Mapping[int, int]) -> VerifierReport:
    D = frozenset(D)
    report = VerifierReport()
    for v in sorted(D):
        for u, dist in bfs_distances(gA, v, limit=3).items():
            if u > v and u in D and labels[u] == labels[v]:
                report.violations.append(("label-clash", (v, u, dist)))
    report.measured["dominating_set_size"] = len(D)
    return report


# --- chromatic number oracle -------------------------------------------------

_PRIMES = (1_000_000_007, 998_244_353)


def _masks(g: Graph, vertices: list[int]) -> list[int]:
    index = {v: i for i, v in enumerate(vertices)}
    out = [0] * len(vertices)
    for u, v in g.edges():
        if u in index and v in index:
            out[index[u]] |= 1 << index[v]
            out[index[v]] |= 1 << index[u]
    return out


def _independent_set_counts(masks: list[int]) -> np.ndarray:
    """``counts[S]`` = number of independent subsets (including the empty set) of vertex subset ``S``."""
    counts = np.ones(1, dtype=np.int64)
    for j, m in enumerate(masks):
        lower_nbrs = m & ((1 << j) - 1)
        idx = np.arange(1 << j, dtype=np.int64)
        counts = np.concatenate([counts, counts + counts[idx & ~lower_nbrs]])
    return counts


def _signed_counts(masks: list[int]) -> tuple[np.ndarray, np.ndarray]:
    counts = _independent_set_counts(masks)
    n = len(masks)
    sizes = np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)
    return counts, np.where((n - sizes) % 2 == 0, 1, -1)


def _chromatic(masks: list[int], stop: int | None = None) -> int:
    """Smallest k whose count of k-tuples of independent sets covering V is nonzero.

    The count is taken modulo two primes; a true count of zero is zero in
    both, so a nonzero residue proves colorability. With ``stop`` set, the
    search gives up after ``k = stop`` and returns ``stop + 1``.
    """
    if not masks:
        return 0
    counts, sign = _signed_counts(masks)
    limit = len(masks) if stop is None else min(stop, len(masks))
    bases = [counts % p for p in _PRIMES]
    accs = [np.ones_like(counts) for _ in _PRIMES]
    for k in range(1, limit + 1):
        for i, p in enumerate(_PRIMES):
            accs[i] = accs[i] * bases[i] % p
        if any(int((sign * acc).sum() % p) for acc, p in zip(accs, _PRIMES)):
            return k
    return limit + 1


def _colorable(masks: list[int], k: int) -> bool:
    return _chromatic(masks, stop=k) <= k


def _maximal_independent_sets(masks: list[int], cand: int, R: int = 0, X: int = 0):
    """Bron–Kerbosch on the complement graph, restricted to ``cand``."""
    if cand == 0 and X == 0:
        yield R
        return
    P = cand
    while P:
        low = P & -P
        u = low.bit_length() - 1
        keep = ~masks[u] & ~low
        yield from _maximal_independent_sets(masks, P & keep, R | low, X & keep)
        P &= ~low
        X |= low


def _sub(masks: list[int], members: list[int]) -> list[int]:
    pos = {m: i for i, m in enumerate(members)}
    out = []
    for m in members:
        row = 0
        x = masks[m]
        while x:
            low = x & -x
            b = low.bit_length() - 1
            if b in pos:
                row |= 1 << pos[b]
            x ^= low
        out.append(row)
    return out


def brute_force_chromatic(g: Graph, cap: int = 20) -> tuple[int, dict[int, int]]:
    """Exact chromatic number and a witness coloring (colors ``1..chi``).

    The witness peels off a maximal independent set containing the lowest
    remaining vertex whenever the rest stays (chi-1)-colorable.
    """
    if g.n > cap:
        raise ValueError(f"graph has {g.n} vertices, above the oracle cap {cap}")
    vertices = list(g.vertices)
    masks = _masks(g, vertices)
    chi = _chromatic(masks)
    coloring: dict[int, int] = {}
    remaining = list(range(len(vertices)))
    color = 0
    while remaining:
        color += 1
        sub = _sub(masks, remaining)
        need = chi - color
        first_nonadj = ((1 << len(remaining)) - 1) & ~sub[0] & ~1
        for ind in _maximal_independent_sets(sub, first_nonadj, R=1):
            rest = [i for i in range(len(remaining)) if not ind >> i & 1]
            if _colorable(_sub(sub, rest), need):
                break
        else:
            raise AssertionError("no peelable independent set; oracle inconsistency")
        for i in range(len(remaining)):
            if ind >> i & 1:
                coloring[vertices[remaining[i]]] = color
        remaining = [remaining[i] for i in rest]
    return chi, coloring
