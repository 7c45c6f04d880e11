"""Coloring from a network decomposition via exact per-cluster coloring.

Each vertex floods ``(neighbors, label)`` records for ``d + 1`` rounds, finds
its own cluster inside what it learned, colors the cluster exactly and
combines the cluster color with its label.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from types import SimpleNamespace

from ..engine import Flood, Phase, PhasedProgram, RunTrace, run
from ..graph import Graph, NetworkDecomposition
from .common import ClusterTooLarge, ProcedureError
from .exact import exact_min_coloring


@dataclass(frozen=True)
class ApproximateOutput:
    """``raw_color = cluster_color * c + decomposition_label - 1``; ``final_color = raw_color - (c - 1)``."""

    final_color: int
    cluster_color: int
    decomposition_label: int
    raw_color: int
    cluster_size: int


def combine(cluster_color: int, label: int, c: int) -> tuple[int, int]:
    raw = cluster_color * c + label - 1
    return raw, raw - (c - 1)


def _own_cluster(me: int, known: dict, d: int) -> tuple[frozenset[int] | None, int]:
    """Members of ``me``'s cluster found within ``d`` same-label hops, plus the largest hop depth seen."""
    label = known[me][1]
    depth = {me: 0}
    queue = deque([me])
    while queue:
        u = queue.popleft()
        for w in known[u][0]:
            if w in depth:
                continue
            rec = known.get(w)
            if rec is None or rec[1] != label:
                continue
            depth[w] = depth[u] + 1
            if depth[w] > d:
                return None, depth[w]
            queue.append(w)
    return frozenset(depth), max(depth.values())


class ApproximatePhase(Phase):
    """Reads ``mem.f`` (label, or ``None`` after an upstream failure); writes ``mem.approx`` or ``mem.approx_error``."""

    name = "approximate"

    def __init__(self, d: int, c_of_n, cap: int):
        self.d = d
        self.c_of_n = c_of_n
        self.cap = cap

    def comm_rounds(self, ctx):
        return self.d + 1

    def step(self, ctx, mem, j, inbox):
        if mem.f is None:
            # Nothing to contribute after an upstream failure.
            if j == self.d + 1:
                mem.approx_error = "unlabeled"
            return None
        if j == 0:
            # Clusters are connected internally, so only same-label records matter.
            label = mem.f
            mem.approx_flood = Flood(self.d + 1, {ctx.self_id: (ctx.neighbor_ids, label)},
                                     accept=lambda _k, rec: rec[1] == label)
        else:
            mem.approx_flood.absorb(inbox.values())
        if j <= self.d:
            out = mem.approx_flood.outgoing()
            return ctx.broadcast(out) if out is not None else None
        known = mem.approx_flood.known
        mem.approx_flood = None
        members, depth = _own_cluster(ctx.self_id, known, self.d)
        if members is None:
            mem.approx_error = "diameter-exceeded"
            return None
        if len(members) > self.cap:
            mem.approx_error = "cluster-too-large"
            mem.approx_cluster_size = len(members)
            return None
        cluster = Graph(members, [(u, w) for u in members for w in known[u][0] if u < w and w in members])
        coloring, _chi = exact_min_coloring(cluster, cap=self.cap)
        c = self.c_of_n(ctx.n)
        raw, final = combine(coloring[ctx.self_id], mem.f, c)
        mem.approx = ApproximateOutput(final, coloring[ctx.self_id], mem.f, raw, len(members))
        return None


@dataclass
class ApproximateResult:
    outputs: dict[int, ApproximateOutput]
    trace: RunTrace

    @property
    def coloring(self) -> dict[int, int]:
        return {v: o.final_color for v, o in self.outputs.items()}


def raise_approx_errors(mems_errors: dict[int, str], sizes: dict[int, int], cap: int, trace=None):
    if not mems_errors:
        return
    kinds = set(mems_errors.values())
    if "cluster-too-large" in kinds:
        big = max(sizes.values())
        raise ClusterTooLarge(big, cap, trace=trace)
    v, kind = min(mems_errors.items())
    raise ProcedureError("approximate", f"vertex {v}: {kind}", kind=kind, trace=trace)


def approximate(g: Graph, nd: NetworkDecomposition, seed: int = 0, *, cap: int = 20) -> ApproximateResult:
    """Run the coloring on a supplied ``(d, c)``-decomposition.

    The decomposition is validated first; the run takes exactly ``d + 1``
    communication rounds.
    """
    from ..verify import verify_decomposition

    report = verify_decomposition(g, nd)
    if not report.passed:
        kind, witness = report.violations[0]
        raise ValueError(f"invalid decomposition: {kind} {witness}")
    labels = nd.assignment
    program = PhasedProgram(
        [ApproximatePhase(nd.d, lambda n: nd.c, cap)],
        memory=lambda ctx: SimpleNamespace(f=int(labels[ctx.self_id]), approx=None, approx_error=None,
                                           approx_cluster_size=0),
        output=lambda mem: mem,
    )
    trace = run(g, program, seed, max_rounds=nd.d + 2)
    errors = {v: m.approx_error for v, m in trace.outputs.items() if m.approx_error}
    sizes = {v: m.approx_cluster_size for v, m in trace.outputs.items()}
    outputs = {v: m.approx for v, m in trace.outputs.items()}
    trace.outputs = dict(outputs)
    raise_approx_errors(errors, sizes, cap, trace)
    return ApproximateResult(outputs, trace)
