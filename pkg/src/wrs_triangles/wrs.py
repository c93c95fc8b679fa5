"""Waiting-room sampling for triangle counting in edge streams.

Memory holds at most ``k`` edges. Until the stream exceeds ``k`` edges all of
them are kept. From then on the budget is split into a FIFO *waiting room*
of the ``w`` most recent edges and a *reservoir* of ``r = k - w`` edges
sampled uniformly from everything older. Each triangle found among stored
edges is weighted by the inverse of the probability that it could have been
found, which keeps the global and per-node estimates unbiased at every time.
"""
from __future__ import annotations

import enum
import math
import random
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .base import ConfigError, StreamingEstimator
from .exact import ContractError
from .stream import Edge, TimedEdge

DEFAULT_ALPHA = 0.1


class Location(enum.IntEnum):
    WAITING_ROOM = 0
    RESERVOIR = 1


WAITING_ROOM = Location.WAITING_ROOM
RESERVOIR = Location.RESERVOIR


class TriangleType(enum.IntEnum):
    EARLY = 1  # closed while every edge is still kept
    SHORT_TOTAL = 2  # both older edges in the waiting room
    SHORT_CLOSING = 3  # one older edge in the waiting room
    LONG = 4  # both older edges in the reservoir


@dataclass(frozen=True)
class WrsConfig:
    """Budget ``k``, waiting-room fraction ``alpha`` and RNG seed.

    The waiting room holds ``w = round(alpha * k)`` edges (halves round up),
    clamped to ``[1, k - 2]`` so the reservoir always has ``r >= 2`` slots.
    """

    k: int
    alpha: float = DEFAULT_ALPHA
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.k, int) or isinstance(self.k, bool):
            raise ConfigError(f"k must be an integer, got {self.k!r}")
        if self.k < 3:
            raise ConfigError(
                f"k={self.k} is too small: need k >= 3 so that the reservoir holds k(1-alpha) >= 2 edges"
            )
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")

    @property
    def w(self) -> int:
        return min(max(math.floor(self.alpha * self.k + 0.5), 1), self.k - 2)

    @property
    def r(self) -> int:
        return self.k - self.w

    @property
    def effective_alpha(self) -> float:
        return self.w / self.k


class Discovery(NamedTuple):
    """A triangle found at arrival time; ``nodes`` is ``(u, v, w)`` with ``(u, v)`` the arriving edge."""

    nodes: tuple[int, int, int]
    kind: TriangleType
    increment: float


def reservoir_insert_probability(t: int, config: WrsConfig) -> float:
    """Probability that the edge leaving the waiting room at time ``t`` enters the reservoir."""
    if t <= config.k:
        raise ContractError(f"waiting room is not active before t = k + 1 = {config.k + 1}; got t={t}")
    return min(1.0, config.r / (t - config.w))


def classify_triangle(t: int, loc1: Location, loc2: Location, config: WrsConfig) -> TriangleType:
    """Type of a triangle closed at time ``t`` from the storage locations of its two older edges.

    Locations are read before the closing edge is sampled, i.e. as of the
    state after edge ``t - 1``.
    """
    if t <= config.k + 1:
        return TriangleType.EARLY
    in_room = (loc1 == WAITING_ROOM) + (loc2 == WAITING_ROOM)
    return (TriangleType.LONG, TriangleType.SHORT_CLOSING, TriangleType.SHORT_TOTAL)[in_room]


def type_from_times(t1: int, t2: int, t3: int, config: WrsConfig) -> TriangleType:
    """Type of a triangle from the arrival times of its edges (``t1 < t2 < t3``)."""
    w = config.w
    if t3 <= config.k + 1:
        return TriangleType.EARLY
    if t3 - t1 <= w:
        return TriangleType.SHORT_TOTAL
    if t3 - t2 <= w:
        return TriangleType.SHORT_CLOSING
    return TriangleType.LONG


def _inverse_probability(kind: int, t3: int, config: WrsConfig) -> float:
    # 1/p as a ratio of exact integers
    kind = TriangleType(kind)
    if kind <= TriangleType.SHORT_TOTAL:
        return 1.0
    if t3 <= config.k + 1:
        raise ContractError(f"type {int(kind)} requires t3 > k + 1 = {config.k + 1}, got t3={t3}")
    w, r = config.w, config.r
    num = t3 - 1 - w
    den = r
    if kind == TriangleType.LONG:
        num *= t3 - 2 - w
        den *= r - 1
    if num <= 0 or den <= 0:
        raise ContractError(f"non-positive probability terms for type {int(kind)} at t3={t3}")
    return max(1.0, num / den)


def discovery_probability(kind: int, t3: int, config: WrsConfig) -> float:
    """Probability that a triangle of type ``kind`` closed at ``t3`` is discovered."""
    return 1.0 / _inverse_probability(kind, t3, config)


def variance_of_increment(kind: int, t3: int, config: WrsConfig) -> float:
    """Variance of one triangle's contribution to the global counter, ``1/p - 1``."""
    return _inverse_probability(kind, t3, config) - 1.0


def triest_variance_of_increment(t3: int, k: int) -> float:
    """Per-triangle increment variance of reservoir sampling with budget ``k`` (Triest-IMPR)."""
    if t3 <= k + 1:
        return 0.0
    return (t3 - 1) * (t3 - 2) / (k * (k - 1)) - 1.0


def variance_dominates_triest(kind: int, t3: int, config: WrsConfig) -> bool:
    """True iff this triangle's increment variance is strictly smaller than under Triest-IMPR."""
    return variance_of_increment(kind, t3, config) < triest_variance_of_increment(t3, config.k)


def variance_reduction_guaranteed(kind: int, t3: int, config: WrsConfig) -> bool:
    """Sufficient conditions under which :func:`variance_dominates_triest` must hold.

    Evaluated with the realized waiting-room fraction ``w / k``.
    """
    alpha = config.effective_alpha
    if t3 <= config.k + 1:
        return False
    if kind == TriangleType.SHORT_TOTAL:
        return True
    if kind == TriangleType.SHORT_CLOSING:
        return t3 > 1 + alpha * config.k / (1 - alpha) or alpha < 0.5
    return False


class WaitingRoomSampler(StreamingEstimator):
    """One-pass global and local triangle estimator with a waiting room and a reservoir.

    ``adj[u][v]`` is the storage location of the sampled edge ``(u, v)``.
    Until the split at ``t = k + 1`` every edge is kept in arrival order in
    ``reservoir``.
    """

    name = "wrs"

    def __init__(self, config: WrsConfig):
        super().__init__(config.seed)
        self.config = config
        self.k = config.k
        self.w = config.w
        self.r = config.r
        self.rng = random.Random(config.seed)
        self.waiting_room: deque[Edge] = deque()
        self.reservoir: list[Edge] = []
        self.adj: dict[int, dict[int, Location]] = {}

    @property
    def split(self) -> bool:
        return self.t > self.k

    def stored_edges(self) -> list[Edge]:
        return list(self.reservoir) + list(self.waiting_room)

    def process_edge(self, e: TimedEdge) -> list[Discovery]:
        t = self._check_order(e)
        u, v = e[0], e[1]
        if u > v:
            u, v = v, u
        found = self._count(u, v, t)
        self._sample(u, v, t)
        self.t = t
        return found

    def _count(self, u: int, v: int, t: int) -> list[Discovery]:
        adj = self.adj
        nu = adj.get(u)
        nv = adj.get(v)
        if not nu or not nv:
            return []
        if len(nu) > len(nv):
            nu, nv = nv, nu
        common = [(x, loc, nv[x]) for x, loc in nu.items() if x in nv]
        if not common:
            return []
        if t <= self.k + 1:
            incs = (1.0, 1.0, 1.0)
            kinds = (TriangleType.EARLY,) * 3
        else:
            w, r = self.w, self.r
            inc3 = max(1.0, (t - 1 - w) / r)
            inc4 = max(1.0, (t - 1 - w) * (t - 2 - w) / (r * (r - 1)))
            incs = (inc4, inc3, 1.0)
            kinds = (TriangleType.LONG, TriangleType.SHORT_CLOSING, TriangleType.SHORT_TOTAL)
        local = self.local_counts
        total = 0.0
        found = []
        for x, l1, l2 in common:
            in_room = (l1 == WAITING_ROOM) + (l2 == WAITING_ROOM)
            inc = incs[in_room]
            total += inc
            local[x] += inc
            found.append(Discovery((u, v, x), kinds[in_room], inc))
        local[u] += total
        local[v] += total
        self.global_count += total
        self.discovered += len(common)
        return found

    def _link(self, a: int, b: int, loc: Location) -> None:
        adj = self.adj
        na = adj.get(a)
        if na is None:
            na = adj[a] = {}
        na[b] = loc
        nb = adj.get(b)
        if nb is None:
            nb = adj[b] = {}
        nb[a] = loc

    def _unlink(self, a: int, b: int) -> None:
        adj = self.adj
        na = adj[a]
        na.pop(b, None)
        if not na:
            del adj[a]
        nb = adj[b]
        nb.pop(a, None)
        if not nb:
            del adj[b]

    def _split_memory(self) -> None:
        stored = self.reservoir
        self.reservoir = stored[: self.r]
        self.waiting_room = deque(stored[self.r :])
        adj = self.adj
        for a, b in self.waiting_room:
            adj[a][b] = WAITING_ROOM
            adj[b][a] = WAITING_ROOM

    def _sample(self, u: int, v: int, t: int) -> None:
        if t <= self.k:
            self.reservoir.append((u, v))
            self._link(u, v, RESERVOIR)
            return
        if t == self.k + 1:
            self._split_memory()
        room = self.waiting_room
        a, b = room.popleft()
        room.append((u, v))
        self._link(u, v, WAITING_ROOM)
        rng = self.rng
        if rng.random() < self.r / (t - self.w):
            slot = rng.randrange(self.r)
            self._unlink(*self.reservoir[slot])
            self.reservoir[slot] = (a, b)
            adj = self.adj
            adj[a][b] = RESERVOIR
            adj[b][a] = RESERVOIR
        else:
            self._unlink(a, b)


def new_wrs(config: Optional[WrsConfig] = None, **kwargs) -> WaitingRoomSampler:
    """Build a sampler from a config or from ``k=..., alpha=..., seed=...``."""
    return WaitingRoomSampler(config if config is not None else WrsConfig(**kwargs))
