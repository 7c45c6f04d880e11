"""Randomized split of V into a part with a small dominating set and a low-degree part."""

from __future__ import annotations

from dataclasses import dataclass
from types import SimpleNamespace

from ..engine import Phase, PhasedProgram, RunTrace, run
from ..graph import Graph

MARKED = "marked"


@dataclass(frozen=True)
class PartitionOutput:
    side: str
    marked: bool

    def __post_init__(self):
        if self.side not in ("A", "B"):
            raise ValueError("side must be 'A' or 'B'")
        if self.marked and self.side != "A":
            raise ValueError("a marked vertex always belongs to A")


class PartitionPhase(Phase):
    """Mark with probability n^-1/2, announce marks, then join A iff marked or next to a mark."""

    name = "partition"

    def comm_rounds(self, ctx):
        return 1

    def step(self, ctx, mem, j, inbox):
        if j == 0:
            mem.marked = bool(ctx.rng.random() < ctx.n ** -0.5)
            return ctx.broadcast(MARKED) if mem.marked else None
        heard = any(msg == MARKED for msg in inbox.values())
        mem.side = "A" if mem.marked or heard else "B"
        return None


@dataclass
class PartitionResult:
    A: frozenset[int]
    B: frozenset[int]
    D: frozenset[int]
    outputs: dict[int, PartitionOutput]
    trace: RunTrace


def partition(g: Graph, seed: int = 0, *, n: int | None = None) -> PartitionResult:
    n_known = g.n if n is None else n
    if n_known < 2:
        raise ValueError("partition needs n >= 2")
    program = PhasedProgram(
        [PartitionPhase()],
        memory=lambda ctx: SimpleNamespace(marked=False, side=None),
        output=lambda mem: PartitionOutput(mem.side, mem.marked),
    )
    trace = run(g, program, seed, max_rounds=2, n=n_known)
    outs = trace.outputs
    A = frozenset(v for v, o in outs.items() if o.side == "A")
    D = frozenset(v for v, o in outs.items() if o.marked)
    return PartitionResult(A, frozenset(g.vertices) - A, D, dict(outs), trace)
