"""Immutable undirected simple graphs with dense internal node indices.

Node tokens are arbitrary strings as they appear in the input files. They are
mapped to indices ``0..n-1`` in first-seen order; every other module works on
those indices and only converts back to tokens for output.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from typing import Hashable, Iterable, TextIO

from .exceptions import EmptyInputError, ParseError, ValidationError

COMMENT_PREFIXES = ("#", "%")


@dataclass(frozen=True)
class LoadDiagnostics:
    self_loops: int = 0
    duplicate_edges: int = 0
    lines_read: int = 0


@dataclass(frozen=True)
class GraphStats:
    nodes: int
    edges: int
    avg_degree: float

    def as_row(self):
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "avg_degree": f"{self.avg_degree:.2f}",
        }


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph.

    ``adjacency[i]`` is the frozenset of neighbor indices of node ``i``.
    Construct through :meth:`from_edges` or :func:`load_edge_list` rather
    than directly.
    """

    tokens: tuple[str, ...]
    adjacency: tuple[frozenset[int], ...]
    diagnostics: LoadDiagnostics = field(default_factory=LoadDiagnostics)
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._index is None:
            object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.tokens)})
        if len(self._index) != len(self.tokens):
            raise ValidationError("node tokens must be unique")

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[Hashable, Hashable]],
        nodes: Iterable[Hashable] = (),
    ) -> "Graph":
        """Build a graph from token pairs.

        Self-loops are dropped and duplicate or reversed edges collapse into
        one; both are counted in :attr:`diagnostics`. Tokens listed in
        ``nodes`` are registered first (and may end up isolated).
        """
        index: dict[str, int] = {}
        tokens: list[str] = []
        adj: list[set[int]] = []

        def intern(tok):
            tok = str(tok)
            i = index.get(tok)
            if i is None:
                i = index[tok] = len(tokens)
                tokens.append(tok)
                adj.append(set())
            return i

        for tok in nodes:
            intern(tok)
        self_loops = duplicates = 0
        for u, v in edges:
            a, b = intern(u), intern(v)
            if a == b:
                self_loops += 1
                continue
            if b in adj[a]:
                duplicates += 1
                continue
            adj[a].add(b)
            adj[b].add(a)
        diag = LoadDiagnostics(self_loops=self_loops, duplicate_edges=duplicates)
        return cls(tuple(tokens), tuple(frozenset(s) for s in adj), diag, index)

    @property
    def n(self) -> int:
        return len(self.tokens)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adjacency) // 2

    def __len__(self):
        return self.n

    def __contains__(self, token):
        return str(token) in self._index

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def index_of(self, token: Hashable) -> int:
        try:
            return self._index[str(token)]
        except KeyError:
            raise KeyError(f"unknown node {token!r}") from None

    def indices_of(self, tokens: Iterable[Hashable]) -> frozenset[int]:
        return frozenset(self.index_of(t) for t in tokens)

    def token_of(self, index: int) -> str:
        return self.tokens[index]

    def neighbors(self, token: Hashable) -> frozenset[str]:
        """Neighbor tokens of ``token``; raises ``KeyError`` for unknown nodes."""
        return frozenset(self.tokens[j] for j in self.adjacency[self.index_of(token)])

    def degree(self, token: Hashable) -> int:
        return len(self.adjacency[self.index_of(token)])

    def degrees(self) -> list[int]:
        return [len(s) for s in self.adjacency]

    def edges(self) -> list[tuple[int, int]]:
        """Each undirected edge once, as ``(i, j)`` with ``i < j``, sorted."""
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in sorted(nbrs) if i < j]


def _open_text(source) -> tuple[TextIO, bool]:
    if isinstance(source, (str, os.PathLike)):
        return open(source, encoding="utf-8"), True
    return source, False


def load_edge_list(source) -> Graph:
    """Read a whitespace-separated edge list from a path or text stream.

    Lines starting with ``#`` or ``%`` are comments; blank lines are ignored.
    Directed inputs are symmetrized.
    """
    fh, owned = _open_text(source)
    try:
        edges = []
        lines = 0
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            lines += 1
            if not line or line.startswith(COMMENT_PREFIXES):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"expected 2 node tokens, got {len(parts)}", line=lineno)
            edges.append((parts[0], parts[1]))
    finally:
        if owned:
            fh.close()
    g = Graph.from_edges(edges)
    if g.n == 0:
        raise EmptyInputError("edge list contains no nodes")
    diag = LoadDiagnostics(g.diagnostics.self_loops, g.diagnostics.duplicate_edges, lines)
    object.__setattr__(g, "diagnostics", diag)
    return g


def parse_edge_list(text: str) -> Graph:
    return load_edge_list(io.StringIO(text))


def neighbors(g: Graph, v: Hashable) -> frozenset[str]:
    return g.neighbors(v)


def stats(g: Graph) -> GraphStats:
    return GraphStats(nodes=g.n, edges=g.m, avg_degree=2 * g.m / g.n if g.n else 0.0)


def write_edge_list(g: Graph, fh: TextIO) -> None:
    for i, j in g.edges():
        fh.write(f"{g.tokens[i]} {g.tokens[j]}\n")


def tokens_of(g: Graph, members: Iterable[int]) -> list[str]:
    """Tokens of the given node indices, in index order."""
    return [g.tokens[i] for i in sorted(members)]
