"""Repeated seeded experiments that estimate how often the randomized procedures succeed."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .algorithms import (
    PipelineParams,
    ProcedureError,
    color_bounded_degree,
    dominate,
    partition,
    pipeline,
)
from .graph import NetworkDecomposition, generate_gnp, generate_random_regular, induced_subgraph
from .verify import verify_coloring, verify_decomposition, verify_distance3_labels


@dataclass
class TrialRecord:
    seed: int
    success: bool
    measured: dict[str, Any] = field(default_factory=dict)
    failure: str | None = None


@dataclass
class TrialSummary:
    experiment: str
    config: dict[str, Any]
    trials: int
    successes: int
    seeds: list[int]
    records: list[TrialRecord]

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials

    @property
    def failures(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.records:
            if r.failure:
                out[r.failure] = out.get(r.failure, 0) + 1
        return out

    def distribution(self, name: str) -> list[Any]:
        return [r.measured.get(name) for r in self.records]

    def extremes(self) -> dict[str, dict[str, float]]:
        keys = sorted({k for r in self.records for k, v in r.measured.items() if isinstance(v, (int, float))})
        out = {}
        for k in keys:
            vals = [r.measured[k] for r in self.records if isinstance(r.measured.get(k), (int, float))]
            out[k] = {"min": min(vals), "max": max(vals), "mean": float(np.mean(vals))}
        return out

    def to_json(self) -> dict[str, Any]:
        from .formats import jsonable

        return {
            "experiment": self.experiment,
            "config": jsonable(self.config),
            "trials": self.trials,
            "successes": self.successes,
            "success_rate": self.success_rate,
            "failures": self.failures,
            "seeds": self.seeds,
            "extremes": self.extremes(),
            "measured_distributions": {k: self.distribution(k) for k in self.extremes()},
        }

    def to_csv(self) -> str:
        keys = sorted({k for r in self.records for k in r.measured})
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["seed", "success", "failure", *keys])
        for r in self.records:
            writer.writerow([r.seed, int(r.success), r.failure or "", *(r.measured.get(k, "") for k in keys)])
        return buf.getvalue()


def split_seed(seed: int) -> tuple[int, int]:
    """Independent (graph seed, run seed) pair derived from one trial seed."""
    a, b = np.random.SeedSequence([seed, 0x5EED]).generate_state(2, dtype=np.uint32)
    return int(a), int(b)


def _failure_name(exc: ProcedureError) -> str:
    return f"{exc.stage}:{exc.kind}"


# --- experiments ----------------------------------------------------------------


def exp_partition_dominating_size(seed: int, n: int = 400, p: float = 0.1) -> TrialRecord:
    gseed, rseed = split_seed(seed)
    res = partition(generate_gnp(n, p, gseed), rseed)
    bound = 2 * math.sqrt(n)
    size = len(res.D)
    return TrialRecord(seed, size <= bound, {"dominating_set_size": size, "bound": bound})


def exp_partition_b_degree(seed: int, n: int = 400, p: float = 0.1, k_degree: float = 2.0) -> TrialRecord:
    gseed, rseed = split_seed(seed)
    g = generate_gnp(n, p, gseed)
    res = partition(g, rseed)
    deg = induced_subgraph(g, res.B).max_degree
    bound = k_degree * math.sqrt(n) * math.log2(n)
    return TrialRecord(seed, deg <= bound, {"max_B_degree": deg, "bound": bound, "B_size": len(res.B)})


def exp_dominate_diameter(seed: int, n: int = 400, p: float = 0.1, epsilon: float = 0.25,
                          iter_budget: int | None = None) -> TrialRecord:
    gseed, rseed = split_seed(seed)
    g = generate_gnp(n, p, gseed)
    part = partition(g, rseed)
    gA = induced_subgraph(g, part.A)
    iters = iter_budget or PipelineParams(epsilon=epsilon).dominate_iterations
    measured: dict[str, Any] = {"A_size": len(part.A), "dominating_set_size": len(part.D)}
    if not part.A:
        return TrialRecord(seed, True, measured)
    try:
        dom = dominate(gA, part.D, epsilon, iters, rseed + 1, n=n)
    except ProcedureError as exc:
        return TrialRecord(seed, False, measured, _failure_name(exc))
    nd = NetworkDecomposition.from_labels(gA, dom.labels, 2, dom.label_range)
    rep = verify_decomposition(gA, nd)
    d3 = verify_distance3_labels(gA, part.D, dom.labels)
    measured.update(max_cluster_diameter=rep.measured["max_cluster_diameter"],
                    cluster_count=rep.measured["cluster_count"],
                    dominate_rounds=dom.trace.rounds_executed)
    ok = rep.passed and d3.passed
    return TrialRecord(seed, ok, measured, None if ok else "verifier")


def exp_color_termination(seed: int, n: int = 500, degree: int = 20, epsilon: float = 0.5,
                          round_budget: int = 10) -> TrialRecord:
    gseed, rseed = split_seed(seed)
    g = generate_random_regular(n, degree, gseed)
    try:
        res = color_bounded_degree(g, degree, epsilon, round_budget=round_budget, seed=rseed)
    except ProcedureError as exc:
        return TrialRecord(seed, False, {"max_attempts": exc.partial.max_attempts}, _failure_name(exc))
    rep = verify_coloring(g, res.colors)
    ok = rep.passed and rep.measured["max_color"] <= res.palette
    return TrialRecord(seed, ok, {"max_attempts": res.max_attempts, "color_count": rep.measured["color_count"],
                                  "palette": res.palette, "rounds": res.trace.rounds_executed},
                       None if ok else "verifier")


def exp_pipeline_legal(seed: int, n: int = 400, p: float = 0.1, **params) -> TrialRecord:
    gseed, rseed = split_seed(seed)
    g = generate_gnp(n, p, gseed)
    pp = PipelineParams(**params)
    try:
        res = pipeline(g, pp, rseed)
    except ProcedureError as exc:
        rounds = exc.trace.rounds_executed if exc.trace is not None else None
        return TrialRecord(seed, False, {"rounds": rounds}, _failure_name(exc))
    col = verify_coloring(g, res.coloring)
    dec = verify_decomposition(g, res.decomposition)
    measured = {
        "rounds": res.trace.rounds_executed,
        "color_count": col.measured["color_count"],
        "max_color": col.measured["max_color"],
        "c": res.decomposition.c,
        "max_cluster_diameter": dec.measured["max_cluster_diameter"],
        "max_cluster_size": dec.measured["max_cluster_size"],
        "dominating_set_size": len(res.D),
    }
    ok = col.passed and dec.passed
    return TrialRecord(seed, ok, measured, None if ok else "verifier")


EXPERIMENTS: dict[str, Callable[..., TrialRecord]] = {
    "partition-dominating-size": exp_partition_dominating_size,
    "partition-B-degree": exp_partition_b_degree,
    "dominate-diameter": exp_dominate_diameter,
    "color-termination": exp_color_termination,
    "pipeline-legal": exp_pipeline_legal,
}


def trial_harness(experiment: str, trials: int, base_seed: int = 0, **config) -> TrialSummary:
    """Run ``experiment`` with seeds ``base_seed .. base_seed + trials - 1``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    try:
        fn = EXPERIMENTS[experiment]
    except KeyError:
        raise KeyError(f"unknown experiment {experiment!r}; choose from {sorted(EXPERIMENTS)}") from None
    seeds = [base_seed + i for i in range(trials)]
    records = [fn(s, **config) for s in seeds]
    return TrialSummary(experiment, dict(config), trials, sum(r.success for r in records), seeds, records)


__all__ = ["EXPERIMENTS", "TrialRecord", "TrialSummary", "split_seed", "trial_harness"]
