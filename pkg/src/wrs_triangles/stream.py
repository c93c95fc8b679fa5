"""Edge-stream ingestion.

Edge-list files hold one undirected edge per line (``u v`` or ``u v ts``).
Line order is arrival order; a trailing timestamp column is ignored. Edges
are canonicalized to ``(min, max)`` and numbered 1, 2, 3, ... as accepted.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Optional, Union

Edge = tuple[int, int]

#: Returned by :func:`parse_edge_line` for blank and comment lines.
SKIP = None

COMMENT_PREFIXES = ("#", "%")


class StreamError(Exception):
    """Raised when an edge stream cannot be read."""


class ParseError(StreamError):
    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class TimedEdge(NamedTuple):
    """A canonical edge ``u < v`` together with its 1-based arrival index."""

    u: int
    v: int
    t: int

    @property
    def edge(self) -> Edge:
        return (self.u, self.v)


def canonical(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass
class StreamOptions:
    dedupe: bool = True
    skip_self_loops: bool = True
    raw_id_mode: str = "int"  # "int" or "str"

    def __post_init__(self):
        if self.raw_id_mode not in ("int", "str"):
            raise ValueError(f"raw_id_mode must be 'int' or 'str', got {self.raw_id_mode!r}")


class NodeIndex:
    """Maps raw node tokens to dense non-negative integer ids.

    In ``"int"`` mode tokens must be non-negative integers and are used as-is.
    In ``"str"`` mode every distinct token gets the next free id in order of
    first appearance.
    """

    def __init__(self, mode: str = "int"):
        self.mode = mode
        self.ids: dict[str, int] = {}

    def __call__(self, token: str, lineno: Optional[int] = None) -> int:
        if self.mode == "int":
            try:
                node = int(token)
            except ValueError:
                raise ParseError(f"non-integer node id {token!r}", lineno) from None
            if node < 0:
                raise ParseError(f"negative node id {token!r}", lineno)
            return node
        node = self.ids.get(token)
        if node is None:
            node = self.ids[token] = len(self.ids)
        return node

    def __len__(self):
        return len(self.ids)


def parse_edge_line(
    line: str,
    options: Optional[StreamOptions] = None,
    *,
    lineno: Optional[int] = None,
    index: Optional[NodeIndex] = None,
) -> Optional[Edge]:
    """Parse one edge-list record.

    Returns the canonical edge from the first two tokens, or :data:`SKIP`
    for blank and comment lines. Any further tokens are ignored. Self-loops
    are returned as ``(u, u)``; filtering them is up to the caller.
    """
    stripped = line.strip()
    if not stripped or stripped.startswith(COMMENT_PREFIXES):
        return SKIP
    if index is None:
        index = NodeIndex(options.raw_id_mode if options else "int")
    tokens = stripped.split()
    if len(tokens) < 2:
        raise ParseError(f"expected at least two tokens, got {stripped!r}", lineno)
    return canonical(index(tokens[0], lineno), index(tokens[1], lineno))


class EdgeStream:
    """Iterable over the accepted edges of an edge-list file.

    Each iteration re-reads the file. Filtering tallies from the most recent
    complete pass are kept in :attr:`self_loops` and :attr:`duplicates`.
    """

    def __init__(self, path: Union[str, Path], options: Optional[StreamOptions] = None):
        self.path = Path(path)
        self.options = options or StreamOptions()
        self.self_loops = 0
        self.duplicates = 0
        self.records = 0

    def __iter__(self) -> Iterator[TimedEdge]:
        opts = self.options
        index = NodeIndex(opts.raw_id_mode)
        seen: set[Edge] = set()
        self.self_loops = self.duplicates = self.records = 0
        t = 0
        try:
            fh = open(self.path, encoding="utf-8")
        except OSError as exc:
            raise StreamError(f"cannot open {self.path}: {exc}") from exc
        with fh:
            try:
                for lineno, line in enumerate(fh, start=1):
                    edge = parse_edge_line(line, lineno=lineno, index=index)
                    if edge is SKIP:
                        continue
                    self.records += 1
                    u, v = edge
                    if u == v and opts.skip_self_loops:
                        self.self_loops += 1
                        continue
                    if opts.dedupe:
                        if edge in seen:
                            self.duplicates += 1
                            continue
                        seen.add(edge)
                    t += 1
                    yield TimedEdge(u, v, t)
            except (OSError, UnicodeDecodeError) as exc:
                raise StreamError(f"error reading {self.path}: {exc}") from exc

    def stats(self) -> dict:
        return {
            "records": self.records,
            "self_loops_skipped": self.self_loops,
            "duplicates_skipped": self.duplicates,
        }


def open_stream(path: Union[str, Path], options: Optional[StreamOptions] = None) -> EdgeStream:
    return EdgeStream(path, options)


def read_edges(path: Union[str, Path], options: Optional[StreamOptions] = None) -> list[TimedEdge]:
    return list(open_stream(path, options))


def timed(edges: Iterable[Edge]) -> list[TimedEdge]:
    """Number a sequence of edges 1..n in order, canonicalizing each."""
    out = []
    for t, (u, v) in enumerate(edges, start=1):
        if u > v:
            u, v = v, u
        out.append(TimedEdge(u, v, t))
    return out


def shuffle_stream(edges: Iterable[Edge], seed: int) -> list[Edge]:
    """Uniformly permute ``edges`` (Fisher-Yates), deterministic in ``seed``.

    Accepts plain or timed edges and returns plain edges; pass the result
    through :func:`timed` to reassign arrival indices.
    """
    out = [(e[0], e[1]) for e in edges]
    random.Random(seed).shuffle(out)
    return out


def write_edges(edges: Iterable[Edge], path: Union[str, Path]) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        for e in edges:
            fh.write(f"{e[0]} {e[1]}\n")
    return path
