"""Community sets: the output of one algorithm on one graph.

Two text formats are read:

* format A: one community per line, whitespace-separated node tokens;
* format B: one ``node label`` pair per line, grouped by label in first-seen
  order.

Communities are stored as frozensets of the graph's dense node indices, in
file order. That order is the tie-break used by pairing, so it is preserved
through every load/dump round trip.
"""

from __future__ import annotations

import io
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence, TextIO

from .exceptions import EmptyInputError, ParseError, ValidationError
from .graph import COMMENT_PREFIXES, Graph, _open_text, tokens_of

logger = logging.getLogger(__name__)

Kind = Literal["partition", "cover"]


def infer_kind(communities: Sequence[frozenset[int]], n: int) -> Kind:
    seen: set[int] = set()
    total = 0
    for c in communities:
        seen |= c
        total += len(c)
    return "partition" if total == len(seen) == n else "cover"


@dataclass(frozen=True)
class CommunitySet:
    algorithm: str
    dataset: str
    communities: tuple[frozenset[int], ...]
    n_nodes: int
    kind: Kind = field(default=None)

    def __post_init__(self):
        comms = tuple(frozenset(c) for c in self.communities)
        object.__setattr__(self, "communities", comms)
        if not comms:
            raise EmptyInputError(f"{self.algorithm}: no communities")
        for k, c in enumerate(comms):
            if not c:
                raise ValidationError(f"{self.algorithm}: community {k} is empty")
            if min(c) < 0 or max(c) >= self.n_nodes:
                raise ValidationError(f"{self.algorithm}: community {k} references unknown node")
        actual = infer_kind(comms, self.n_nodes)
        if self.kind is None:
            object.__setattr__(self, "kind", actual)
        elif self.kind == "partition" and actual != "partition":
            raise ValidationError(f"{self.algorithm}: declared partition overlaps or leaves nodes uncovered")

    @classmethod
    def from_tokens(cls, g: Graph, groups: Iterable[Iterable], algorithm="", dataset=""):
        return cls(algorithm, dataset, tuple(g.indices_of(grp) for grp in groups), g.n)

    @classmethod
    def from_labels(cls, labels: Sequence, algorithm="", dataset=""):
        """Group node ``i`` by ``labels[i]``; groups ordered by first member."""
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, set()).add(i)
        return cls(algorithm, dataset, tuple(frozenset(s) for s in groups.values()), len(labels))

    def __len__(self):
        return len(self.communities)

    def __iter__(self):
        return iter(self.communities)

    def __getitem__(self, k):
        return self.communities[k]

    @property
    def is_partition(self) -> bool:
        return self.kind == "partition"

    def relabel(self, algorithm=None, dataset=None) -> "CommunitySet":
        return CommunitySet(
            self.algorithm if algorithm is None else algorithm,
            self.dataset if dataset is None else dataset,
            self.communities,
            self.n_nodes,
        )

    def labels(self) -> list[int]:
        """Per-node community index (partitions only)."""
        if not self.is_partition:
            raise ValidationError(f"{self.algorithm}: labels are only defined for partitions")
        out = [0] * self.n_nodes
        for k, c in enumerate(self.communities):
            for v in c:
                out[v] = k
        return out

    def as_tokens(self, g: Graph) -> list[list[str]]:
        return [tokens_of(g, c) for c in self.communities]


@dataclass(frozen=True)
class CommunityDiagnostics:
    uncovered: frozenset[int]
    overlap: frozenset[int]
    singletons: int

    @property
    def clean(self) -> bool:
        return not self.uncovered and not self.overlap

    def describe(self, g: Graph) -> list[str]:
        lines = []
        if self.uncovered:
            lines.append("uncovered: {%s}" % ",".join(tokens_of(g, self.uncovered)))
        if self.overlap:
            lines.append("overlap: {%s}" % ",".join(tokens_of(g, self.overlap)))
        if self.singletons:
            lines.append(f"singletons: {self.singletons}")
        return lines


def validate_against(cs: CommunitySet, g: Graph) -> CommunityDiagnostics:
    if cs.n_nodes != g.n:
        raise ValidationError(f"{cs.algorithm}: community set built for {cs.n_nodes} nodes, graph has {g.n}")
    counts = Counter(v for c in cs.communities for v in c)
    return CommunityDiagnostics(
        uncovered=frozenset(range(g.n)) - counts.keys(),
        overlap=frozenset(v for v, k in counts.items() if k > 1),
        singletons=sum(1 for c in cs.communities if len(c) == 1),
    )


def _detect_format(rows: list[tuple[int, list[str]]], g: Graph) -> str:
    if not rows or any(len(parts) != 2 for _, parts in rows):
        return "A"
    seconds = [parts[1] for _, parts in rows]
    if len(set(seconds)) < len(seconds) or any(s not in g for s in seconds):
        return "B"
    return "A"


def load_communities(source, g: Graph, algorithm: str = "", dataset: str = "", fmt: str = "auto") -> CommunitySet:
    """Read a community file (path or text stream) against ``g``.

    ``fmt`` is ``"A"``, ``"B"`` or ``"auto"``. A ``# format: A`` comment line
    settles auto-detection; otherwise format B is picked when every line holds
    two tokens and the second column repeats or names something that is not a
    node.
    """
    fh, owned = _open_text(source)
    try:
        rows = []
        blank_lines = []
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line.startswith(COMMENT_PREFIXES):
                marker = line.lstrip("#% ").lower().replace(" ", "")
                if fmt == "auto" and marker in ("format:a", "format:b"):
                    fmt = marker[-1].upper()
                continue
            if not line:
                blank_lines.append(lineno)
                continue
            rows.append((lineno, line.split()))
    finally:
        if owned:
            fh.close()
    if not rows:
        raise EmptyInputError(f"{algorithm or 'communities'}: no communities found")
    inner_blank = [ln for ln in blank_lines if rows[0][0] < ln < rows[-1][0]]
    if inner_blank:
        logger.warning("%s: skipped empty community lines %s", algorithm or "communities", inner_blank)

    if fmt == "auto":
        fmt = _detect_format(rows, g)

    def lookup(tok, lineno):
        try:
            return g.index_of(tok)
        except KeyError:
            raise ValidationError(f"{algorithm or 'communities'}: line {lineno}: unknown node {tok!r}") from None

    if fmt == "A":
        groups = [frozenset(lookup(t, ln) for t in parts) for ln, parts in rows]
    elif fmt == "B":
        by_label: dict[str, set[int]] = {}
        for ln, parts in rows:
            if len(parts) != 2:
                raise ParseError("expected 'node label'", line=ln)
            by_label.setdefault(parts[1], set()).add(lookup(parts[0], ln))
        groups = [frozenset(s) for s in by_label.values()]
    else:
        raise ValueError(f"unknown community format {fmt!r}")
    return CommunitySet(algorithm, dataset, tuple(groups), g.n)


def parse_communities(text: str, g: Graph, algorithm: str = "", dataset: str = "", fmt: str = "auto") -> CommunitySet:
    return load_communities(io.StringIO(text), g, algorithm, dataset, fmt)


def dump_communities(cs: CommunitySet, g: Graph, fh: TextIO | None = None, header: bool = True) -> str:
    """Serialize in format A. Members within a line are in index order.

    The ``# format: A`` header keeps two-token covers from being re-read as
    format B.
    """
    text = "# format: A\n" if header else ""
    text += "".join(" ".join(row) + "\n" for row in cs.as_tokens(g))
    if fh is not None:
        fh.write(text)
    return text
