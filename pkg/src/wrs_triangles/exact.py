"""Exact incremental triangle counting and interval analysis.

The exact counter stores the whole graph; it is the ground truth that the
samplers are scored against, not a bounded-memory algorithm.
"""
from __future__ import annotations

import bisect
import csv
import math
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .stream import Edge, TimedEdge, canonical


class ContractError(Exception):
    """Raised when a caller breaks an ordering or uniqueness precondition."""


@dataclass(frozen=True)
class TriangleRecord:
    nodes: tuple[int, int, int]
    t1: int
    t2: int
    t3: int

    def __post_init__(self):
        if not self.t1 < self.t2 < self.t3:
            raise ValueError(f"edge arrival times must be strictly increasing, got {self.t1, self.t2, self.t3}")

    @classmethod
    def from_times(cls, nodes: Iterable[int], times: Iterable[int]) -> "TriangleRecord":
        t1, t2, t3 = sorted(times)
        return cls(tuple(sorted(nodes)), t1, t2, t3)


def closing_interval(r: TriangleRecord) -> int:
    return r.t3 - r.t2


def total_interval(r: TriangleRecord) -> int:
    return r.t3 - r.t1


class ExactCounter:
    """Exact global and per-node triangle counts over an insertion-only stream."""

    def __init__(self, keep_records: bool = False):
        self.adj: dict[int, set[int]] = defaultdict(set)
        self.edge_time: dict[Edge, int] = {}
        self.global_count = 0
        self.local_counts: dict[int, int] = defaultdict(int)
        self.t = 0
        self.keep_records = keep_records
        self.records: list[TriangleRecord] = []

    def insert(self, e: TimedEdge) -> list[TriangleRecord]:
        """Add ``e`` and return the triangles it closes."""
        u, v, t = e
        if t != self.t + 1:
            raise ContractError(f"expected arrival index {self.t + 1}, got {t}")
        if u == v:
            raise ContractError(f"self-loop ({u}, {v}) at t={t}")
        if u > v:
            u, v = v, u
        if (u, v) in self.edge_time:
            raise ContractError(f"duplicate edge ({u}, {v}) at t={t}")
        adj = self.adj
        nu, nv = adj[u], adj[v]
        small, large = (nu, nv) if len(nu) <= len(nv) else (nv, nu)
        common = [w for w in small if w in large]
        closed = []
        if common:
            etime = self.edge_time
            local = self.local_counts
            for w in common:
                t_uw = etime[canonical(u, w)]
                t_vw = etime[canonical(v, w)]
                closed.append(TriangleRecord.from_times((u, v, w), (t_uw, t_vw, t)))
                local[w] += 1
            local[u] += len(common)
            local[v] += len(common)
            self.global_count += len(common)
            if self.keep_records:
                self.records.extend(closed)
        nu.add(v)
        nv.add(u)
        self.edge_time[(u, v)] = t
        self.t = t
        return closed

    def extend(self, edges: Iterable[TimedEdge]) -> "ExactCounter":
        for e in edges:
            self.insert(e)
        return self

    @property
    def nodes(self) -> set[int]:
        return set(self.adj)


def exact_counts(state: ExactCounter) -> tuple[int, dict[int, int]]:
    """Snapshot ``(global, local)``; local omits nodes with zero triangles."""
    return state.global_count, {u: c for u, c in state.local_counts.items() if c}


def count_triangles_batch(edges: Iterable[Edge]) -> tuple[int, dict[int, int]]:
    """Count triangles of a static simple graph by degree-ordered enumeration.

    Independent of :class:`ExactCounter`; used to cross-check it.
    """
    adj: dict[int, set[int]] = defaultdict(set)
    for e in edges:
        u, v = e[0], e[1]
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    rank = {u: (len(nbrs), u) for u, nbrs in adj.items()}
    forward = {u: {w for w in nbrs if rank[w] > rank[u]} for u, nbrs in adj.items()}
    total = 0
    local: dict[int, int] = defaultdict(int)
    for u, fu in forward.items():
        for v in fu:
            for w in fu & forward[v]:
                total += 1
                local[u] += 1
                local[v] += 1
                local[w] += 1
    return total, dict(local)


@dataclass
class IntervalTable:
    """Histogram and complementary CDF of triangle intervals.

    ``ccdf[i]`` is the fraction of intervals ``>= bin_low[i]``.
    """

    which: str
    bin_low: list[int]
    bin_high: list[int]
    count: list[int]
    ccdf: list[float]
    n: int = 0
    mean: float = math.nan

    def rows(self) -> list[tuple[int, int, int, float]]:
        return list(zip(self.bin_low, self.bin_high, self.count, self.ccdf))

    def __len__(self):
        return len(self.count)

    def to_dict(self) -> dict:
        return {
            "which": self.which,
            "n": self.n,
            "mean": None if math.isnan(self.mean) else self.mean,
            "columns": ["bin_low", "bin_high", "count", "ccdf"],
            "rows": [list(r) for r in self.rows()],
        }

    def write_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["bin_low", "bin_high", "count", "ccdf"])
            writer.writerows(self.rows())
        return path


def _interval_values(records: Iterable[TriangleRecord], which: str) -> list[int]:
    if which == "closing":
        return [r.t3 - r.t2 for r in records]
    if which == "total":
        return [r.t3 - r.t1 for r in records]
    raise ValueError(f"which must be 'closing' or 'total', got {which!r}")


def _bin_edges(max_value: int, bins: Union[str, Sequence[int]]) -> list[int]:
    if not isinstance(bins, str):
        edges = sorted(set(int(b) for b in bins))
        if len(edges) < 2 or edges[0] > 1 or edges[-1] <= max_value:
            raise ValueError("explicit bin edges must start at or below 1 and extend past the largest interval")
        return edges
    if bins == "log2":
        base = 2
    elif bins == "log10":
        base = 10
    else:
        raise ValueError(f"unknown binning {bins!r}")
    edges = [1]
    while edges[-1] <= max_value:
        edges.append(edges[-1] * base)
    return edges


def interval_distribution(
    records: Sequence[TriangleRecord],
    which: str = "closing",
    bins: Union[str, Sequence[int]] = "log2",
) -> IntervalTable:
    """Bin closing or total intervals; logarithmic bins ``[b**i, b**(i+1))`` by default."""
    values = _interval_values(records, which)
    if not values:
        return IntervalTable(which, [], [], [], [], 0)
    edges = _bin_edges(max(values), bins)
    counts = [0] * (len(edges) - 1)
    for x in values:
        counts[bisect.bisect_right(edges, x) - 1] += 1
    n = len(values)
    ccdf = []
    remaining = n
    for c in counts:
        ccdf.append(remaining / n)
        remaining -= c
    return IntervalTable(which, edges[:-1], edges[1:], counts, ccdf, n, sum(values) / n)


def interval_ccdf(records: Sequence[TriangleRecord], which: str, points: Iterable[int]) -> list[float]:
    """Empirical ``P(interval >= x)`` at each of ``points``."""
    values = sorted(_interval_values(records, which))
    n = len(values)
    if n == 0:
        return [math.nan for _ in points]
    return [(n - bisect.bisect_left(values, x)) / n for x in points]


def mean_interval(records: Sequence[TriangleRecord], which: str = "closing") -> float:
    values = _interval_values(records, which)
    return sum(values) / len(values) if values else math.nan


def triangle_records(edges: Iterable[TimedEdge]) -> list[TriangleRecord]:
    counter = ExactCounter(keep_records=True)
    counter.extend(edges)
    return counter.records
