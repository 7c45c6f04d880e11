"""Synchronous LOCAL-model round engine.

A vertex program sees only its own ID, ``n``, its neighbor IDs, the messages
delivered to it this round and its private random stream. Messages sent in
round ``i`` are delivered at the start of round ``i + 1``; every vertex in a
round acts on the same snapshot, so execution order inside a round is
irrelevant.

Payloads may be arbitrarily large but must be treated as read-only by the
receiver: the engine hands the same object to every recipient.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Callable, Iterable, Mapping, Sequence

import numpy as np

from .graph import Graph

_EMPTY: Mapping[int, Any] = MappingProxyType({})


class EngineError(RuntimeError):
    pass


class LocalityViolation(EngineError):
    def __init__(self, vertex: int, target: int, round_no: int):
        super().__init__(f"vertex {vertex} tried to message non-neighbor {target} in round {round_no}")
        self.vertex = vertex
        self.target = target
        self.round = round_no


class RoundLimitExceeded(EngineError):
    """Raised when vertices are still running after ``max_rounds``; carries the partial trace."""

    def __init__(self, trace: "RunTrace"):
        live = trace.n_live
        super().__init__(f"{live} vertices still running after {trace.rounds_executed} rounds")
        self.trace = trace


class LocalBudgetExceeded(EngineError):
    def __init__(self, vertex: int, round_no: int, elapsed: float, budget: float):
        super().__init__(
            f"local computation budget exceeded: vertex {vertex} spent {elapsed:.3f}s in round {round_no} "
            f"(budget {budget:.3f}s)"
        )
        self.vertex = vertex
        self.round = round_no


def derive_vertex_rng(global_seed: int, v: int) -> np.random.Generator:
    """Per-vertex random stream keyed by ``(global_seed, v)``.

    Streams come from ``SeedSequence`` spawn keys, so distinct vertices get
    independent streams by construction and reruns reproduce them exactly.
    """
    ss = np.random.SeedSequence(entropy=global_seed, spawn_key=(int(v),))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass
class VertexContext:
    self_id: int
    n: int
    neighbor_ids: frozenset[int]
    rng: np.random.Generator
    round: int = 0
    inbox: Mapping[int, Any] = _EMPTY

    def broadcast(self, payload: Any) -> dict[int, Any]:
        return {u: payload for u in self.neighbor_ids}


@dataclass
class Action:
    send: Mapping[int, Any] = field(default_factory=dict)
    halt: bool = False
    output: Any = None


class VertexProgram:
    """Per-vertex state machine.

    ``init`` builds the private state of one vertex; ``step`` is called once
    per round with the round's context and may mutate that state in place.
    """

    def init(self, ctx: VertexContext) -> Any:
        return None

    def step(self, ctx: VertexContext, state: Any) -> Action:
        raise NotImplementedError


@dataclass
class RunTrace:
    seed: int
    rounds_executed: int
    messages_per_round: list[int]
    terminated_round: dict[int, int | None]
    outputs: dict[int, Any]

    @property
    def communication_rounds(self) -> int:
        """Rounds whose messages could still be read by someone.

        The final round of a run is purely local, so a program that exchanges
        messages for ``r`` rounds finishes in round ``r + 1``.
        """
        return max(self.rounds_executed - 1, 0)

    @property
    def n_live(self) -> int:
        return sum(1 for r in self.terminated_round.values() if r is None)

    @property
    def completed(self) -> bool:
        return self.n_live == 0

    def to_json(self) -> dict[str, Any]:
        from .formats import jsonable

        return {
            "seed": self.seed,
            "rounds": self.rounds_executed,
            "per_vertex": [
                {"id": v, "terminated_round": self.terminated_round[v], "output": jsonable(self.outputs.get(v))}
                for v in sorted(self.terminated_round)
            ],
            "messages_per_round": list(self.messages_per_round),
        }


def run(
    g: Graph,
    program: VertexProgram,
    seed: int | None = 0,
    max_rounds: int = 1000,
    *,
    n: int | None = None,
    order: Sequence[int] | None = None,
    step_budget: float | None = 60.0,
    observer: Callable[[int, int, Any], None] | None = None,
) -> RunTrace:
    """Execute ``program`` on every vertex of ``g`` in lockstep rounds.

    ``n`` overrides the vertex count reported to vertices (used when running
    a procedure on an induced subgraph of a larger network). ``order`` fixes
    the per-round execution order; results never depend on it. ``observer``
    is called as ``observer(round, vertex, state)`` after every step.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (1 << 63))
    n_known = g.n if n is None else n
    verts = list(g.vertices) if order is None else list(order)
    if sorted(verts) != list(g.vertices):
        raise ValueError("order must be a permutation of the vertex set")

    adj = g.adjacency
    ctxs = {v: VertexContext(v, n_known, adj[v], derive_vertex_rng(seed, v)) for v in verts}
    states = {v: program.init(ctxs[v]) for v in verts}
    terminated: dict[int, int | None] = {v: None for v in g.vertices}
    outputs: dict[int, Any] = {}
    live = set(verts)
    inboxes: dict[int, dict[int, Any]] = {}
    messages_per_round: list[int] = []
    round_no = 0

    while live and round_no < max_rounds:
        round_no += 1
        next_inboxes: dict[int, dict[int, Any]] = {}
        sent = 0
        halted = []
        for v in verts:
            if v not in live:
                continue
            ctx = ctxs[v]
            ctx.round = round_no
            box = inboxes.get(v)
            ctx.inbox = MappingProxyType(box) if box else _EMPTY
            t0 = time.perf_counter()
            action = program.step(ctx, states[v])
            elapsed = time.perf_counter() - t0
            if step_budget is not None and elapsed > step_budget:
                raise LocalBudgetExceeded(v, round_no, elapsed, step_budget)
            if action.send:
                nbrs = adj[v]
                for dst, payload in action.send.items():
                    if dst not in nbrs:
                        raise LocalityViolation(v, dst, round_no)
                    next_inboxes.setdefault(dst, {})[v] = payload
                sent += len(action.send)
            if action.halt:
                halted.append(v)
                terminated[v] = round_no
                outputs[v] = action.output
            if observer is not None:
                observer(round_no, v, states[v])
        live.difference_update(halted)
        messages_per_round.append(sent)
        inboxes = next_inboxes

    trace = RunTrace(seed, round_no, messages_per_round, terminated, outputs)
    if live:
        raise RoundLimitExceeded(trace)
    return trace


# --- phased composition ------------------------------------------------------


class Phase:
    """One fixed-length stage of a composite program.

    ``step(ctx, mem, j, inbox)`` is invoked for ``j = 0 .. comm_rounds(ctx)``.
    Steps ``j < comm_rounds`` may return messages; the last step is purely
    local and consumes the messages of step ``comm_rounds - 1``. The inbox of
    step 0 is always empty.
    """

    name = "phase"

    def comm_rounds(self, ctx: VertexContext) -> int:
        raise NotImplementedError

    def step(self, ctx: VertexContext, mem: Any, j: int, inbox: Mapping[int, Any]) -> Mapping[int, Any] | None:
        raise NotImplementedError


@dataclass
class _PhasedState:
    mem: Any
    phase: int = 0
    j: int = 0


class PhasedProgram(VertexProgram):
    """Run phases back to back; the local tail of one phase shares a round with the next phase's start.

    Total rounds executed are ``sum(comm_rounds) + 1``.
    """

    def __init__(self, phases: Sequence[Phase], memory: Callable[[VertexContext], Any], output: Callable[[Any], Any]):
        self.phases = list(phases)
        self.memory = memory
        self.output = output

    def init(self, ctx):
        return _PhasedState(self.memory(ctx))

    def step(self, ctx, st: _PhasedState) -> Action:
        inbox = ctx.inbox
        while True:
            phase = self.phases[st.phase]
            last = phase.comm_rounds(ctx)
            out = phase.step(ctx, st.mem, st.j, inbox)
            if st.j < last:
                st.j += 1
                return Action(send=out or {})
            if out:
                raise EngineError(f"phase {phase.name!r} sent messages from its local tail step")
            st.phase += 1
            st.j = 0
            inbox = _EMPTY
            if st.phase == len(self.phases):
                return Action(halt=True, output=self.output(st.mem))


# --- flooding / topology collection ------------------------------------------


class Flood:
    """Hop-limited flooding of keyed records.

    Each level forwards only the records first learned at the previous level,
    so a record keyed by vertex ``u`` reaches exactly the vertices within
    ``radius`` hops of ``u``, each at the round equal to its distance.
    ``accept(key, record)`` filters incoming records; rejected ones are
    neither stored nor relayed.
    """

    __slots__ = ("radius", "known", "fresh", "level", "accept")

    def __init__(self, radius: int, records: Mapping[Any, Any] | None = None,
                 accept: Callable[[Any, Any], bool] | None = None):
        self.radius = radius
        self.accept = accept
        self.known: dict[Any, Any] = dict(records or {})
        self.fresh: dict[Any, Any] = dict(self.known)
        self.level = 0

    def outgoing(self) -> Mapping[Any, Any] | None:
        if self.fresh and self.level < self.radius:
            return MappingProxyType(self.fresh)
        return None

    def absorb(self, payloads: Iterable[Mapping[Any, Any]]) -> dict[Any, Any]:
        known = self.known
        accept = self.accept
        new: dict[Any, Any] = {}
        for p in payloads:
            for k in p.keys() - known.keys():
                if k not in new and (accept is None or accept(k, p[k])):
                    new[k] = p[k]
        known.update(new)
        self.fresh = new
        self.level += 1
        return new

    def __eq__(self, other):
        return isinstance(other, Flood) and (self.radius, self.known, self.level) == (other.radius, other.known, other.level)


@dataclass(frozen=True)
class Topology:
    """What a vertex knows after collecting its ``radius``-hop neighborhood.

    ``adjacency`` holds the full neighbor set of every vertex within
    ``radius`` hops, which includes edges leaving the neighborhood.
    """

    center: int
    radius: int
    adjacency: Mapping[int, frozenset[int]]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.adjacency)

    def edges(self) -> set[tuple[int, int]]:
        """Edges with both endpoints inside the neighborhood."""
        inside = self.adjacency
        return {(u, w) for u, nb in inside.items() for w in nb if u < w and w in inside}

    def boundary_edges(self) -> set[tuple[int, int]]:
        inside = self.adjacency
        return {(u, w) for u, nb in inside.items() for w in nb if w not in inside}

    def as_graph(self) -> Graph:
        return Graph(self.adjacency.keys(), self.edges())


class CollectTopology(VertexProgram):
    def __init__(self, radius: int):
        if radius < 0:
            raise ValueError("radius must be non-negative")
        self.radius = radius

    def init(self, ctx):
        return Flood(self.radius, {ctx.self_id: ctx.neighbor_ids})

    def step(self, ctx, flood: Flood) -> Action:
        if ctx.round > 1:
            flood.absorb(ctx.inbox.values())
        if ctx.round <= self.radius:
            out = flood.outgoing()
            return Action(send=ctx.broadcast(out) if out is not None else {})
        return Action(halt=True, output=Topology(ctx.self_id, self.radius, MappingProxyType(dict(flood.known))))


def collect_topology(radius: int) -> VertexProgram:
    """Program after which every vertex outputs the topology of its ``radius``-hop neighborhood.

    Runs ``radius`` communication rounds and halts in round ``radius + 1``.
    """
    return CollectTopology(radius)
