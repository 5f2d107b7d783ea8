"""Classical community quality metrics used to cross-check TV rankings.

Conductance and isolability are computed per community and aggregated by
unweighted mean (``aggregate="max"`` is available for conductance). Both are
defined for covers; modularity needs a partition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .communities import CommunitySet
from .exceptions import UnsupportedMetricError, ValidationError
from .graph import Graph


def _edge_counts(g: Graph, members: frozenset[int]) -> tuple[int, int, int]:
    """Return (internal edges, boundary edges, volume) of a node set."""
    twice_internal = boundary = volume = 0
    for v in members:
        nbrs = g.adjacency[v]
        inside = len(nbrs & members)
        twice_internal += inside
        boundary += len(nbrs) - inside
        volume += len(nbrs)
    return twice_internal // 2, boundary, volume


def _check(g: Graph, cs: CommunitySet):
    if cs.n_nodes != g.n:
        raise ValidationError(f"{cs.algorithm}: community set does not belong to this graph")


def modularity(g: Graph, cs: CommunitySet) -> float:
    """Newman modularity of a partition."""
    _check(g, cs)
    if not cs.is_partition:
        raise UnsupportedMetricError(f"{cs.algorithm}: modularity needs a partition, got a cover")
    m = g.m
    if m == 0:
        return 0.0
    q = 0.0
    for c in cs.communities:
        e_in, _, vol = _edge_counts(g, c)
        q += e_in / m - (vol / (2 * m)) ** 2
    return q


def community_conductance(g: Graph, members: frozenset[int]) -> float:
    _, cut, vol = _edge_counts(g, members)
    if cut == 0:
        return 0.0
    return cut / min(vol, 2 * g.m - vol)


def conductance(g: Graph, cs: CommunitySet, aggregate: str = "mean") -> float:
    _check(g, cs)
    values = [community_conductance(g, c) for c in cs.communities]
    if aggregate == "mean":
        return sum(values) / len(values)
    if aggregate == "max":
        return max(values)
    raise ValueError(f"unknown aggregate {aggregate!r}")


def community_isolability(g: Graph, members: frozenset[int]) -> float:
    e_in, e_out, _ = _edge_counts(g, members)
    if e_in + e_out == 0:
        return 0.0
    return e_in / (e_in + e_out)


def isolability(g: Graph, cs: CommunitySet) -> float:
    """Mean over communities of internal / (internal + boundary) edges."""
    _check(g, cs)
    return sum(community_isolability(g, c) for c in cs.communities) / len(cs.communities)


@dataclass(frozen=True)
class MetricReport:
    algorithm: str
    dataset: str
    modularity: float | None
    conductance: float
    isolability: float
    conductance_aggregate: str = "mean"

    def as_row(self, decimals: int | None = 3) -> dict:
        def fmt(x):
            if x is None:
                return ""
            return f"{x:.{decimals}f}" if decimals is not None else repr(x)

        return {
            "algorithm": self.algorithm,
            "dataset": self.dataset,
            "isolability": fmt(self.isolability),
            "modularity": fmt(self.modularity),
            "conductance": fmt(self.conductance),
        }


def metric_report(g: Graph, cs: CommunitySet, conductance_aggregate: str = "mean") -> MetricReport:
    """All three metrics; modularity is ``None`` for covers."""
    return MetricReport(
        algorithm=cs.algorithm,
        dataset=cs.dataset,
        modularity=modularity(g, cs) if cs.is_partition else None,
        conductance=conductance(g, cs, conductance_aggregate),
        isolability=isolability(g, cs),
        conductance_aggregate=conductance_aggregate,
    )
