"""Decomposition of a graph that has a small dominating set D.

D-vertices repeatedly draw labels from ``1..floor(n^(1/2+eps))`` and keep a
label once no other D-vertex within three hops holds or proposes it. Each
iteration takes four rounds: three to flood label records three hops and one
to announce final labels to neighbors. Afterwards every non-D vertex copies
the label of its smallest-ID labeled D-neighbor.

Final labels never change, so a finished D-vertex floods its record once (in
the iteration after it finishes) and receivers remember it.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import SimpleNamespace
from typing import Iterable

from ..engine import Flood, Phase, PhasedProgram, RunTrace, run
from ..graph import Graph
from .common import DominationViolation, WhpFailure, dominate_label_range

FINAL = "final"
RADIUS = 3


@dataclass(frozen=True)
class DominateOutput:
    label: int | None
    in_d: bool


class DominatePhase(Phase):
    """Runs ``iterations`` four-round iterations on vertices with ``mem.side == 'A'``.

    Membership in D is ``mem.marked``. Sets ``mem.label`` (or leaves it
    ``None`` and raises ``mem.dominate_failed`` / ``mem.unlabeled``).
    """

    name = "dominate"

    def __init__(self, epsilon: float, iterations: int):
        self.epsilon = epsilon
        self.iterations = iterations

    def comm_rounds(self, ctx):
        return 4 * self.iterations

    def step(self, ctx, mem, j, inbox):
        if mem.side != "A":
            return None
        if j == 0:
            mem.dom_live = mem.marked
            mem.dom_announce = False
            mem.known_finals = {}
            mem.nbr_finals = {}
        sub = j % 4
        if sub == 0:
            self._read_finals(mem, inbox.items())
            if j == 4 * self.iterations:
                self._finish(mem)
                return None
            records = {}
            if mem.dom_live:
                mem.proposal = int(ctx.rng.integers(1, dominate_label_range(ctx.n, self.epsilon) + 1))
                records[ctx.self_id] = (mem.proposal, False)
            elif mem.dom_announce:
                records[ctx.self_id] = (mem.label, True)
                mem.dom_announce = False
            mem.flood = Flood(RADIUS, records)
        else:
            mem.flood.absorb(inbox.values())
        if sub < 3:
            out = mem.flood.outgoing()
            return ctx.broadcast(out) if out is not None else None
        return self._decide(ctx, mem)

    @staticmethod
    def _read_finals(mem, items: Iterable):
        for u, msg in items:
            tag, lab = msg
            if tag == FINAL:
                mem.nbr_finals[u] = lab

    @staticmethod
    def _decide(ctx, mem):
        me = ctx.self_id
        taken = set()
        for w, (lab, final) in mem.flood.known.items():
            if w == me:
                continue
            if final:
                mem.known_finals[w] = lab
            taken.add(lab)
        taken.update(lab for w, lab in mem.known_finals.items() if w != me)
        mem.flood = None
        if mem.dom_live and mem.proposal not in taken:
            mem.dom_live = False
            mem.label = mem.proposal
            mem.dom_announce = True
            return ctx.broadcast((FINAL, mem.label))
        return None

    @staticmethod
    def _finish(mem):
        if mem.marked:
            mem.dominate_failed = mem.dom_live
        elif mem.nbr_finals:
            mem.label = mem.nbr_finals[min(mem.nbr_finals)]
        else:
            mem.unlabeled = True


def dominate_memory(marked: bool, side: str = "A") -> SimpleNamespace:
    return SimpleNamespace(
        side=side, marked=marked, label=None, dominate_failed=False, unlabeled=False, flood=None, proposal=None
    )


@dataclass
class DominateResult:
    labels: dict[int, int]
    D: frozenset[int]
    label_range: int
    iterations: int
    trace: RunTrace


def dominate(
    gA: Graph,
    D: Iterable[int],
    epsilon: float,
    iter_budget: int,
    seed: int = 0,
    *,
    n: int | None = None,
) -> DominateResult:
    """Label ``gA`` so that every cluster has strong diameter at most 2.

    ``n`` is the network size the vertices believe in (defaults to
    ``gA.n``); it sets the label range.
    """
    D = frozenset(D)
    if not D <= set(gA.vertices):
        raise ValueError("D must be a subset of the vertex set")
    undominated = [v for v in gA.vertices if v not in D and not (gA.neighbors(v) & D)]
    if undominated:
        raise DominationViolation("dominate", f"D does not dominate vertices {undominated[:5]}")
    if iter_budget < 1:
        raise ValueError("iter_budget must be >= 1")
    program = PhasedProgram(
        [DominatePhase(epsilon, iter_budget)],
        memory=lambda ctx: dominate_memory(ctx.self_id in D),
        output=lambda mem: DominateOutput(mem.label, mem.marked),
    )
    n_known = gA.n if n is None else n
    trace = run(gA, program, seed, max_rounds=4 * iter_budget + 1, n=n_known)
    labels = {v: o.label for v, o in trace.outputs.items() if o.label is not None}
    result = DominateResult(labels, D, dominate_label_range(n_known, epsilon), iter_budget, trace)
    live = sorted(v for v in D if v not in labels)
    if live:
        raise WhpFailure(
            "dominate",
            f"{len(live)} dominating vertices unlabeled after {iter_budget} iterations",
            kind="iteration-budget-exhausted",
            partial=result,
            trace=trace,
        )
    return result
