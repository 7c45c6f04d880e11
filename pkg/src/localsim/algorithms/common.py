from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any


class ProcedureError(RuntimeError):
    """Base for failures raised by the distributed procedures.

    ``stage`` names the procedure that failed and ``kind`` is a short
    machine-readable tag.
    """

    kind = "procedure-error"

    def __init__(self, stage: str, message: str, *, kind: str | None = None, partial: Any = None, trace: Any = None):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        if kind is not None:
            self.kind = kind
        self.partial = partial
        self.trace = trace


class WhpFailure(ProcedureError):
    """A low-probability event the analysis allows for (budget exhausted, degree bound missed)."""

    kind = "whp-failure"


class ClusterTooLarge(ProcedureError):
    kind = "cluster-too-large"

    def __init__(self, size: int, cap: int, stage: str = "approximate", **kw):
        super().__init__(stage, f"cluster too large for exact coloring: {size} vertices (cap {cap})", **kw)
        self.size = size
        self.cap = cap


class DominationViolation(ProcedureError):
    kind = "domination-violation"


def _snap(x: float) -> float:
    r = round(x)
    if abs(x - r) <= 1e-9 * max(1.0, abs(x)):
        return float(r)
    return x


def ceil_pow(base: float, exponent: float) -> int:
    """``ceil(base ** exponent)`` with exact powers snapped to their integer value."""
    return int(math.ceil(_snap(base ** exponent)))


def floor_pow(base: float, exponent: float) -> int:
    return int(math.floor(_snap(base ** exponent)))


def color_palette_size(delta_bound: int, epsilon: float) -> int:
    return max(1, ceil_pow(delta_bound, 1.0 + epsilon))


def dominate_label_range(n: int, epsilon: float) -> int:
    return max(1, floor_pow(n, 0.5 + epsilon))


def degree_threshold(n: int, k_degree: float) -> int:
    """t = floor(k * sqrt(n) * log2(n))."""
    return int(math.floor(_snap(k_degree * math.sqrt(n) * math.log2(n))))


@dataclass(frozen=True)
class PipelineParams:
    """Constants of the decomposition/coloring pipeline.

    ``round_budget`` and ``iter_budget`` default to ``ceil(k_iters_color /
    (mu * epsilon))`` and ``ceil(k_iters_dominate / epsilon)``.
    """

    epsilon: float = 0.25
    k_degree: float = 2.0
    k_iters_color: float = 4.0
    k_iters_dominate: float = 4.0
    mu: float = 0.5
    round_budget: int | None = None
    iter_budget: int | None = None
    cluster_cap: int = 64

    def __post_init__(self):
        if self.epsilon <= 0 or self.mu <= 0:
            raise ValueError("epsilon and mu must be positive")
        if min(self.k_degree, self.k_iters_color, self.k_iters_dominate) < 1:
            raise ValueError("pipeline constants must be >= 1")
        for name in ("round_budget", "iter_budget"):
            val = getattr(self, name)
            if val is not None and val < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.cluster_cap < 1:
            raise ValueError("cluster_cap must be >= 1")

    @property
    def color_rounds(self) -> int:
        if self.round_budget is not None:
            return self.round_budget
        return math.ceil(_snap(self.k_iters_color / (self.mu * self.epsilon)))

    @property
    def dominate_iterations(self) -> int:
        if self.iter_budget is not None:
            return self.iter_budget
        return math.ceil(_snap(self.k_iters_dominate / self.epsilon))
