"""Synthetic edge streams with tunable temporal locality."""
from __future__ import annotations

import random
from collections import defaultdict, deque
from pathlib import Path
from typing import Optional, Union

from .stream import Edge, canonical, write_edges

DEFAULT_WINDOW = 8
DEFAULT_REACH = 0.3


def synthetic_edges(
    n_edges: int,
    locality: float,
    seed: int,
    *,
    n_nodes: Optional[int] = None,
    window: int = DEFAULT_WINDOW,
    reach: float = DEFAULT_REACH,
) -> list[Edge]:
    """Generate a simple-graph edge stream.

    With probability ``locality`` the next edge is local: take a random edge
    ``(a, b)`` among the last ``window`` arrivals and close a wedge
    ``a - b - c`` with ``c`` joined to ``b`` within the window. Failing that,
    with probability ``reach`` ``c`` may be any older neighbor of ``b``;
    otherwise the edge opens a new wedge at ``b``. Non-local edges join two
    uniformly random nodes out of ``n_nodes`` (default ``max(16, n_edges // 2)``).
    """
    if n_edges < 3:
        raise ValueError(f"n_edges must be >= 3, got {n_edges}")
    if not 0.0 <= locality <= 1.0:
        raise ValueError(f"locality must lie in [0, 1], got {locality}")
    if window < 1:
        raise ValueError("window must be positive")
    if n_nodes is None:
        n_nodes = max(16, n_edges // 2)
    if n_edges > n_nodes * (n_nodes - 1) // 4:
        raise ValueError(f"{n_edges} edges is too dense for {n_nodes} nodes")

    rng = random.Random(seed)
    adj: dict[int, set[int]] = defaultdict(set)
    recent: deque[Edge] = deque(maxlen=window)
    out: list[Edge] = []

    def add(a: int, b: int) -> None:
        adj[a].add(b)
        adj[b].add(a)
        e = canonical(a, b)
        out.append(e)
        recent.append(e)

    while len(out) < n_edges:
        if recent and rng.random() < locality:
            a, b = recent[rng.randrange(len(recent))]
            if rng.random() < 0.5:
                a, b = b, a
            na = adj[a]
            cands = [y if x == b else x for x, y in recent if b in (x, y)]
            cands = [c for c in cands if c != a and c not in na]
            if not cands and rng.random() < reach:
                cands = [c for c in sorted(adj[b]) if c != a and c not in na]
            if cands:
                add(a, rng.choice(cands))
                continue
            c = rng.randrange(n_nodes)
            if c != b and c not in adj[b]:
                add(b, c)
            continue
        a = rng.randrange(n_nodes)
        b = rng.randrange(n_nodes)
        if a != b and b not in adj[a]:
            add(a, b)
    return out


def generate_synthetic_stream(
    n_edges: int,
    locality: float,
    seed: int,
    path: Union[str, Path],
    **kwargs,
) -> Path:
    """Write :func:`synthetic_edges` to ``path`` as an edge-list file."""
    return write_edges(synthetic_edges(n_edges, locality, seed, **kwargs), path)
