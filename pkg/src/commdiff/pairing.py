"""Comparable-community pairing between a primary and an alternative set.

Every primary community is paired with the alternative community it shares
the most nodes with (lowest alternative index on ties). The mapping is
one-directional: several primary communities may share a partner. Primary
communities that share no node with any alternative community are reported
as skipped instead of being force-paired.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .communities import CommunitySet
from .exceptions import ValidationError
from .graph import Graph, tokens_of


@dataclass(frozen=True)
class ComparablePair:
    primary_index: int
    alt_index: int
    overlap: int
    analytical_nodes: frozenset[int]


@dataclass(frozen=True)
class PairAssignment:
    pairs: tuple[ComparablePair, ...]
    skipped: tuple[int, ...]

    def __len__(self):
        return len(self.pairs)

    def to_json(self, g: Graph) -> dict:
        return {
            "pairs": [
                {
                    "i": p.primary_index,
                    "j": p.alt_index,
                    "overlap": p.overlap,
                    "analytical_nodes": tokens_of(g, p.analytical_nodes),
                }
                for p in self.pairs
            ],
            "skipped": list(self.skipped),
        }


def _membership(cs: CommunitySet) -> dict[int, list[int]]:
    member_of: dict[int, list[int]] = {}
    for j, c in enumerate(cs.communities):
        for v in c:
            member_of.setdefault(v, []).append(j)
    return member_of


def pair_communities(cp: CommunitySet, ca: CommunitySet) -> PairAssignment:
    if cp.n_nodes != ca.n_nodes:
        raise ValidationError(
            f"{cp.algorithm} and {ca.algorithm} reference graphs of different size "
            f"({cp.n_nodes} vs {ca.n_nodes})"
        )
    member_of = _membership(ca)
    pairs = []
    skipped = []
    for i, c in enumerate(cp.communities):
        counts = Counter(j for v in c for j in member_of.get(v, ()))
        if not counts:
            skipped.append(i)
            continue
        best = max(counts.values())
        j = min(k for k, cnt in counts.items() if cnt == best)
        pairs.append(ComparablePair(i, j, best, c - ca.communities[j]))
    return PairAssignment(tuple(pairs), tuple(skipped))


def analytical_nodes(pair: ComparablePair) -> frozenset[int]:
    """Primary-community members absent from the paired alternative community."""
    return pair.analytical_nodes
