from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .exact import ContractError
from .stream import TimedEdge


class ConfigError(ValueError):
    """Invalid sampler or experiment configuration."""


@dataclass
class EstimateSnapshot:
    t: int
    global_estimate: float
    local_estimates: dict[int, float] = field(default_factory=dict)
    discovered: int = 0


class StreamingEstimator:
    """Shared counter state for the one-pass triangle estimators.

    Subclasses implement :meth:`process_edge`. ``global_count`` and
    ``local_counts`` hold the running estimates; ``discovered`` counts
    triangles found among stored edges.
    """

    name = "estimator"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.t = 0
        self.global_count = 0.0
        self.local_counts: dict[int, float] = defaultdict(float)
        self.discovered = 0

    def _check_order(self, e: TimedEdge) -> int:
        t = self.t + 1
        if e[2] != t:
            raise ContractError(f"{self.name}: expected arrival index {t}, got {e[2]}")
        return t

    def process_edge(self, e: TimedEdge):
        raise NotImplementedError

    def process(self, edges: Iterable[TimedEdge]) -> "StreamingEstimator":
        for e in edges:
            self.process_edge(e)
        return self

    def snapshot(self) -> EstimateSnapshot:
        return EstimateSnapshot(self.t, self.global_count, dict(self.local_counts), self.discovered)

    def local_sum(self) -> float:
        return sum(self.local_counts.values())
