"""Deterministic minimum coloring of small graphs.

The result is a pure function of the labeled input graph, so every member of
a cluster that runs it on the same topology obtains the identical coloring.

The chromatic number is found by DSATUR branch and bound. The coloring
returned is then the lexicographically first chi-coloring when vertices are
taken in ascending ID order and colors are tried in ascending order,
searched by backtracking with forward checking.
"""

from __future__ import annotations

from functools import lru_cache

from ..graph import Graph
from .common import ClusterTooLarge

DEFAULT_CAP = 20


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _greedy_clique(nbr: list[int]) -> int:
    n = len(nbr)
    best = 1 if n else 0
    for start in sorted(range(n), key=lambda i: (-bin(nbr[i]).count("1"), i)):
        clique = 1 << start
        cand = nbr[start]
        while cand:
            nxt = max(_bits(cand), key=lambda i: (bin(nbr[i] & cand).count("1"), -i))
            clique |= 1 << nxt
            cand &= nbr[nxt]
        best = max(best, bin(clique).count("1"))
    return best


def _dsatur_chromatic(nbr: list[int]) -> int:
    """Chromatic number by DSATUR-ordered branch and bound."""
    n = len(nbr)
    if n == 0:
        return 0
    lower = _greedy_clique(nbr)
    colors = [-1] * n
    # forb[v]: bitmask of colors present among v's colored neighbors, kept as counts
    counts = [[0] * n for _ in range(n)]
    deg = [bin(m).count("1") for m in nbr]
    best = n + 1

    def pick() -> int:
        chosen, key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = sum(1 for c in counts[v] if c)
            k = (sat, deg[v], -v)
            if key is None or k > key:
                chosen, key = v, k
        return chosen

    def assign(v: int, c: int, delta: int):
        colors[v] = c if delta > 0 else -1
        for u in _bits(nbr[v]):
            counts[u][c] += delta

    def search(colored: int, used: int) -> bool:
        nonlocal best
        if used >= best:
            return False
        if colored == n:
            best = used
            return best == lower
        v = pick()
        row = counts[v]
        for c in range(min(used + 1, best - 1)):
            if row[c]:
                continue
            assign(v, c, 1)
            done = search(colored + 1, max(used, c + 1))
            assign(v, c, -1)
            if done:
                return True
        return False

    search(0, 0)
    return best


def _restrict(nbr: list[int], domains: list[int], free: int, v: int, c: int) -> list[int] | None:
    """Copy of ``domains`` with ``c`` removed from v's free neighbors, or None on a wipe-out."""
    out = domains[:]
    bit = 1 << c
    for u in _bits(nbr[v] & free):
        if out[u] & bit:
            out[u] &= ~bit
            if not out[u]:
                return None
    return out


def _completable(nbr: list[int], domains: list[int], free: int, used: int, k: int) -> bool:
    """Can the vertices in ``free`` be colored from their domains?

    Fail-first search: always branch on the free vertex with the fewest options.
    Colors ``used..k-1`` appear nowhere yet, so only the first of them is tried.
    """
    if not free:
        return True
    allowed = (1 << min(used + 1, k)) - 1
    v, best = -1, None
    for u in _bits(free):
        key = (bin(domains[u] & allowed).count("1"), -bin(nbr[u] & free).count("1"))
        if best is None or key < best:
            v, best = u, key
            if key[0] <= 1:
                break
    rest = free & ~(1 << v)
    for c in _bits(domains[v] & allowed):
        nd = _restrict(nbr, domains, rest, v, c)
        if nd is not None and _completable(nbr, nd, rest, max(used, c + 1), k):
            return True
    return False


def _lex_first_coloring(nbr: list[int], k: int) -> list[int]:
    """Lexicographically first proper coloring with colors ``0..k-1`` in index order.

    Vertices are fixed one at a time; a color is kept only if the remaining
    vertices can still be completed, so there is no deep backtracking here.
    """
    n = len(nbr)
    domains = [(1 << k) - 1] * n
    free = (1 << n) - 1
    colors = [0] * n
    used = 0
    for i in range(n):
        free &= ~(1 << i)
        for c in _bits(domains[i] & ((1 << min(used + 1, k)) - 1)):
            nd = _restrict(nbr, domains, free, i, c)
            if nd is not None and _completable(nbr, nd, free, max(used, c + 1), k):
                colors[i], domains, used = c, nd, max(used, c + 1)
                break
        else:
            raise AssertionError("no coloring with the computed chromatic number")
    return colors


@lru_cache(maxsize=4096)
def _solve(vertices: tuple[int, ...], edges: tuple[tuple[int, int], ...]) -> tuple[tuple[int, ...], int]:
    index = {v: i for i, v in enumerate(vertices)}
    nbr = [0] * len(vertices)
    for u, v in edges:
        a, b = index[u], index[v]
        nbr[a] |= 1 << b
        nbr[b] |= 1 << a
    chi = _dsatur_chromatic(nbr)
    return tuple(c + 1 for c in _lex_first_coloring(nbr, chi)), chi


def exact_min_coloring(g: Graph, cap: int = DEFAULT_CAP) -> tuple[dict[int, int], int]:
    """Return ``(coloring, chi)`` with colors ``1..chi``.

    Raises :class:`ClusterTooLarge` when ``g`` has more than ``cap`` vertices.
    """
    if g.n > cap:
        raise ClusterTooLarge(g.n, cap, stage="exact_min_coloring")
    colors, chi = _solve(g.vertices, tuple(g.edges()))
    return dict(zip(g.vertices, colors)), chi
