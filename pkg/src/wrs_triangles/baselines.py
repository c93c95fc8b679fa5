"""Reference estimators: reservoir sampling (Triest-IMPR) and fixed-probability sampling (MASCOT).

Both count triangles closed by the arriving edge before deciding whether
to keep it, so every arriving edge contributes to the estimates.
"""
from __future__ import annotations

import random

from .base import ConfigError, StreamingEstimator
from .stream import Edge, TimedEdge


def triest_weight(t: int, k: int) -> float:
    """Increment per triangle closed at time ``t``: ``max(1, (t-1)(t-2) / (k(k-1)))``."""
    return max(1.0, (t - 1) * (t - 2) / (k * (k - 1)))


class _SampledGraphMixin:
    adj: dict[int, set[int]]

    def _common(self, u: int, v: int):
        adj = self.adj
        nu = adj.get(u)
        nv = adj.get(v)
        if not nu or not nv:
            return ()
        if len(nu) > len(nv):
            nu, nv = nv, nu
        return [x for x in nu if x in nv]

    def _credit(self, u: int, v: int, common, inc: float) -> None:
        local = self.local_counts
        for x in common:
            local[x] += inc
        total = inc * len(common)
        local[u] += total
        local[v] += total
        self.global_count += total
        self.discovered += len(common)

    def _link(self, a: int, b: int) -> None:
        adj = self.adj
        na = adj.get(a)
        if na is None:
            na = adj[a] = set()
        na.add(b)
        nb = adj.get(b)
        if nb is None:
            nb = adj[b] = set()
        nb.add(a)

    def _unlink(self, a: int, b: int) -> None:
        adj = self.adj
        na = adj[a]
        na.discard(b)
        if not na:
            del adj[a]
        nb = adj[b]
        nb.discard(a)
        if not nb:
            del adj[b]


class TriestImpr(_SampledGraphMixin, StreamingEstimator):
    """Reservoir of ``k`` edges; triangles weighted by :func:`triest_weight`."""

    name = "triest"

    def __init__(self, k: int, seed: int = 0):
        if not isinstance(k, int) or k < 2:
            raise ConfigError(f"Triest budget k must be an integer >= 2, got {k!r}")
        super().__init__(seed)
        self.k = k
        self.rng = random.Random(seed)
        self.reservoir: list[Edge] = []
        self.adj: dict[int, set[int]] = {}

    def process_edge(self, e: TimedEdge) -> None:
        t = self._check_order(e)
        u, v = e[0], e[1]
        if u > v:
            u, v = v, u
        common = self._common(u, v)
        if common:
            self._credit(u, v, common, triest_weight(t, self.k))
        k = self.k
        if t <= k:
            self.reservoir.append((u, v))
            self._link(u, v)
        else:
            rng = self.rng
            if rng.random() < k / t:
                slot = rng.randrange(k)
                self._unlink(*self.reservoir[slot])
                self.reservoir[slot] = (u, v)
                self._link(u, v)
        self.t = t


class Mascot(_SampledGraphMixin, StreamingEstimator):
    """Keeps each edge independently with probability ``p``; triangles weighted by ``1/p**2``."""

    name = "mascot"

    def __init__(self, p: float, seed: int = 0):
        if not 0.0 < p <= 1.0:
            raise ConfigError(f"MASCOT sampling probability must lie in (0, 1], got {p}")
        super().__init__(seed)
        self.p = p
        self.increment = 1.0 / (p * p)
        self.rng = random.Random(seed)
        self.adj: dict[int, set[int]] = {}
        self.stored = 0

    def process_edge(self, e: TimedEdge) -> None:
        t = self._check_order(e)
        u, v = e[0], e[1]
        if u > v:
            u, v = v, u
        common = self._common(u, v)
        if common:
            self._credit(u, v, common, self.increment)
        if self.rng.random() < self.p:
            self._link(u, v)
            self.stored += 1
        self.t = t


def baseline_snapshot(state: StreamingEstimator):
    return state.snapshot()
