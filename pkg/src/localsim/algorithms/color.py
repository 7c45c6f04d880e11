"""Randomized Delta^(1+eps)-coloring for graphs with a known degree bound.

Every live vertex proposes a uniform color from ``1..ceil(Delta^(1+eps))``
each round and keeps it when no neighbor proposed the same color in that
round and no finished neighbor already owns it. Colliding vertices both
discard, so simultaneous finishers never clash.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import SimpleNamespace

from ..engine import Action, Phase, RunTrace, VertexProgram, run
from ..graph import Graph
from .common import WhpFailure, color_palette_size

PROPOSE = "p"
FINAL = "f"


@dataclass(frozen=True)
class ColorOutput:
    color: int | None
    attempts: int


def _read_inbox(inbox, final_colors: dict[int, int]) -> set[int]:
    proposals = set()
    for u, (tag, q) in inbox.items():
        if tag == PROPOSE:
            proposals.add(q)
        else:
            final_colors[u] = q
    return proposals


def _draw(ctx, palette: int) -> int:
    return int(ctx.rng.integers(1, palette + 1))


class ColorProgram(VertexProgram):
    """Standalone run: a vertex halts as soon as its color is final."""

    def __init__(self, palette: int, round_budget: int):
        self.palette = palette
        self.round_budget = round_budget

    def init(self, ctx):
        return SimpleNamespace(q=None, attempts=0, final_colors={})

    def step(self, ctx, st):
        if ctx.round == 1:
            st.q = _draw(ctx, self.palette)
            st.attempts = 1
            if not ctx.neighbor_ids:
                return Action(halt=True, output=ColorOutput(st.q, 1))
            return Action(send=ctx.broadcast((PROPOSE, st.q)))
        proposals = _read_inbox(ctx.inbox, st.final_colors)
        if st.q not in proposals and st.q not in st.final_colors.values():
            return Action(send=ctx.broadcast((FINAL, st.q)), halt=True, output=ColorOutput(st.q, st.attempts))
        if st.attempts >= self.round_budget:
            return Action(halt=True, output=ColorOutput(None, st.attempts))
        st.q = _draw(ctx, self.palette)
        st.attempts += 1
        return Action(send=ctx.broadcast((PROPOSE, st.q)))


class ColorPhase(Phase):
    """Fixed-length variant used inside the pipeline; only vertices with ``mem.side == 'B'`` take part.

    Vertices whose live B-degree exceeds ``delta_bound`` set
    ``mem.degree_violation``.
    """

    name = "color"

    def __init__(self, delta_bound_of_n, epsilon: float, round_budget: int):
        self.delta_bound_of_n = delta_bound_of_n
        self.epsilon = epsilon
        self.round_budget = round_budget

    def comm_rounds(self, ctx):
        return self.round_budget

    def step(self, ctx, mem, j, inbox):
        if mem.side != "B":
            return None
        palette = color_palette_size(self.delta_bound_of_n(ctx.n), self.epsilon)
        if j == 0:
            mem.color_q = _draw(ctx, palette)
            mem.color_attempts = 1
            mem.color_finals = {}
            return ctx.broadcast((PROPOSE, mem.color_q))
        if mem.color is not None:
            return None
        if j == 1 and len(inbox) > self.delta_bound_of_n(ctx.n):
            mem.degree_violation = True
        proposals = _read_inbox(inbox, mem.color_finals)
        if mem.color_q not in proposals and mem.color_q not in mem.color_finals.values():
            mem.color = mem.color_q
            return ctx.broadcast((FINAL, mem.color)) if j < self.round_budget else None
        if j == self.round_budget:
            return None
        mem.color_q = _draw(ctx, palette)
        mem.color_attempts += 1
        return ctx.broadcast((PROPOSE, mem.color_q))


@dataclass
class ColorResult:
    colors: dict[int, int]
    attempts: dict[int, int]
    palette: int
    trace: RunTrace

    @property
    def max_attempts(self) -> int:
        return max(self.attempts.values(), default=0)


def default_round_budget(epsilon: float, mu: float = 0.5, k: float = 4.0) -> int:
    return math.ceil(k / (mu * epsilon))


def color_bounded_degree(
    g: Graph,
    delta_bound: int,
    epsilon: float,
    mu: float = 0.5,
    round_budget: int | None = None,
    seed: int = 0,
    *,
    n: int | None = None,
) -> ColorResult:
    """Color ``g`` with at most ``ceil(delta_bound^(1+epsilon))`` colors.

    Raises :class:`WhpFailure` (stage ``"color"``) when some vertex is still
    uncolored after ``round_budget`` proposals; the partial result is
    attached as ``exc.partial``.
    """
    if g.max_degree > delta_bound:
        raise ValueError(f"max degree {g.max_degree} exceeds delta_bound {delta_bound}")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if round_budget is None:
        round_budget = default_round_budget(epsilon, mu)
    if round_budget < 1:
        raise ValueError("round_budget must be >= 1")
    palette = color_palette_size(delta_bound, epsilon)
    trace = run(g, ColorProgram(palette, round_budget), seed, max_rounds=round_budget + 1, n=n)
    colors = {v: o.color for v, o in trace.outputs.items() if o.color is not None}
    attempts = {v: o.attempts for v, o in trace.outputs.items()}
    result = ColorResult(colors, attempts, palette, trace)
    if len(colors) < g.n:
        raise WhpFailure(
            "color",
            f"{g.n - len(colors)} vertices uncolored after {round_budget} rounds",
            kind="round-budget-exhausted",
            partial=result,
            trace=trace,
        )
    return result
