"""End-to-end constant-round decomposition and coloring.

One engine invocation runs, back to back: partition (1 round), the
dominating-set labeling on A (4 rounds per iteration), the bounded-degree
coloring on B, a local label merge, and the cluster-exact coloring on the
merged decomposition (3 rounds). The schedule depends only on the
parameters, never on ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import SimpleNamespace
from typing import Mapping

from ..engine import Phase, PhasedProgram, RunTrace, run
from ..graph import Graph, NetworkDecomposition
from .approximate import ApproximateOutput, ApproximatePhase, raise_approx_errors
from .color import ColorPhase
from .common import (
    DominationViolation,
    PipelineParams,
    WhpFailure,
    color_palette_size,
    degree_threshold,
    dominate_label_range,
)
from .dominate import DominatePhase
from .partition import PartitionPhase

CLUSTER_DIAMETER = 2


def merge_decompositions(dA: Mapping[int, int], dB: Mapping[int, int]) -> dict[int, int]:
    """Relabel A-side labels to ``2l`` and B-side labels to ``2l + 1``."""
    overlap = dA.keys() & dB.keys()
    if overlap:
        raise ValueError(f"A and B overlap on {sorted(overlap)[:5]}")
    merged = {v: 2 * lab for v, lab in dA.items()}
    merged.update((v, 2 * lab + 1) for v, lab in dB.items())
    return merged


def merged_label_bound(n: int, params: PipelineParams) -> int:
    """Largest label the merge can produce for an ``n``-vertex network."""
    t = degree_threshold(n, params.k_degree)
    return max(2 * dominate_label_range(n, params.epsilon), 2 * color_palette_size(t, params.epsilon) + 1)


class MergePhase(Phase):
    name = "merge"

    def comm_rounds(self, ctx):
        return 0

    def step(self, ctx, mem, j, inbox):
        if mem.side == "A":
            mem.f = None if mem.label is None else 2 * mem.label
        else:
            mem.f = None if mem.color is None else 2 * mem.color + 1
        return None


def pipeline_memory(ctx) -> SimpleNamespace:
    return SimpleNamespace(
        marked=False, side=None,
        label=None, dominate_failed=False, unlabeled=False, flood=None, proposal=None,
        color=None, degree_violation=False,
        f=None, approx=None, approx_error=None, approx_cluster_size=0,
    )


def pipeline_program(params: PipelineParams) -> PhasedProgram:
    t_of_n = lambda n: degree_threshold(n, params.k_degree)  # noqa: E731
    return PhasedProgram(
        [
            PartitionPhase(),
            DominatePhase(params.epsilon, params.dominate_iterations),
            ColorPhase(t_of_n, params.epsilon, params.color_rounds),
            MergePhase(),
            ApproximatePhase(CLUSTER_DIAMETER, lambda n: merged_label_bound(n, params), params.cluster_cap),
        ],
        memory=pipeline_memory,
        output=lambda mem: mem,
    )


def pipeline_rounds(params: PipelineParams) -> int:
    """Rounds executed by :func:`pipeline` (communication rounds plus the final local round)."""
    return 1 + 4 * params.dominate_iterations + params.color_rounds + CLUSTER_DIAMETER + 1 + 1


@dataclass
class PipelineResult:
    decomposition: NetworkDecomposition
    outputs: dict[int, ApproximateOutput]
    trace: RunTrace
    A: frozenset[int]
    B: frozenset[int]
    D: frozenset[int]
    t: int

    @property
    def coloring(self) -> dict[int, int]:
        return {v: o.final_color for v, o in self.outputs.items()}


def pipeline(g: Graph, params: PipelineParams | None = None, seed: int = 0) -> PipelineResult:
    """Compute an (O(1), O(n^(1/2+eps)))-decomposition and the coloring derived from it.

    Failures are raised after the run, in stage order: ``dominate`` and
    ``color`` raise :class:`WhpFailure`, a violated degree bound raises
    ``WhpFailure`` with kind ``"degree-bound-violated"``, and an oversized
    cluster raises ``ClusterTooLarge``.
    """
    params = params or PipelineParams()
    if g.n < 4:
        raise ValueError("pipeline needs n >= 4")
    trace = run(g, pipeline_program(params), seed, max_rounds=pipeline_rounds(params))
    mems = trace.outputs
    A = frozenset(v for v, m in mems.items() if m.side == "A")
    B = frozenset(g.vertices) - A
    D = frozenset(v for v, m in mems.items() if m.marked)
    t = degree_threshold(g.n, params.k_degree)
    outputs = {v: m.approx for v, m in mems.items()}
    partial = SimpleNamespace(memory=dict(mems), A=A, B=B, D=D, t=t)
    trace.outputs = {v: m.approx for v, m in mems.items()}

    failed = sorted(v for v, m in mems.items() if m.dominate_failed)
    if failed:
        raise WhpFailure("dominate", f"{len(failed)} dominating vertices unlabeled",
                         kind="iteration-budget-exhausted", partial=partial, trace=trace)
    unlabeled = sorted(v for v, m in mems.items() if m.unlabeled)
    if unlabeled:
        raise DominationViolation("dominate", f"vertices {unlabeled[:5]} have no labeled D-neighbor",
                                  partial=partial, trace=trace)
    over = sorted(v for v, m in mems.items() if m.degree_violation)
    if over:
        raise WhpFailure("color", f"max degree of G(B) exceeds t={t} at vertices {over[:5]}",
                         kind="degree-bound-violated", partial=partial, trace=trace)
    uncolored = sorted(v for v in B if mems[v].color is None)
    if uncolored:
        raise WhpFailure("color", f"{len(uncolored)} vertices uncolored after {params.color_rounds} rounds",
                         kind="round-budget-exhausted", partial=partial, trace=trace)
    errors = {v: m.approx_error for v, m in mems.items() if m.approx_error}
    sizes = {v: m.approx_cluster_size for v, m in mems.items()}
    raise_approx_errors(errors, sizes, params.cluster_cap, trace)

    labels = {v: m.f for v, m in mems.items()}
    nd = NetworkDecomposition.from_labels(g, labels, CLUSTER_DIAMETER, merged_label_bound(g.n, params))
    return PipelineResult(nd, outputs, trace, A, B, D, t)
