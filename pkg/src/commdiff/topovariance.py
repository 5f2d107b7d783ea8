"""Topological variance (TV) between community sets.

For one comparable pair ``(P, A)`` the analytical nodes are ``P - A``. Each
analytical node ``v`` contributes the fraction of its neighbors inside ``P``
minus the fraction inside ``A``; the pair score is the mean contribution.
The set-level score is the mean over all comparable pairs.

Conventions where the formula is silent:

* a pair with no analytical nodes (``P`` contained in ``A``) scores 0 and
  still counts toward the set-level mean;
* an isolated analytical node contributes 0 but still counts in the pair
  denominator;
* if no primary community overlaps any alternative community the set-level
  score is 0 and :attr:`SetTv.empty` is set.

Scores lie in ``[-1, 1]``. Positive values mean the primary communities keep
more of the analytical nodes' neighborhoods than the alternatives do.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .communities import CommunitySet
from .exceptions import InsufficientAlgorithmsError, ValidationError
from .graph import Graph
from .pairing import ComparablePair, PairAssignment, pair_communities


@dataclass(frozen=True)
class PairTv:
    value: float
    analytical_count: int
    defined: bool


@dataclass(frozen=True)
class SetTv:
    value: float
    pair_values: tuple[PairTv, ...]
    assignment: PairAssignment

    @property
    def pair_count(self) -> int:
        return len(self.pair_values)

    @property
    def empty(self) -> bool:
        return not self.pair_values


def pair_tv(g: Graph, pair: ComparablePair, cp_i: frozenset[int], ca_j: frozenset[int]) -> PairTv:
    nodes = pair.analytical_nodes
    if not nodes:
        return PairTv(0.0, 0, False)
    adjacency = g.adjacency
    total = 0.0
    for v in nodes:
        nbrs = adjacency[v]
        if nbrs:
            total += (len(nbrs & cp_i) - len(nbrs & ca_j)) / len(nbrs)
    return PairTv(total / len(nodes), len(nodes), True)


def _check(g: Graph, cs: CommunitySet):
    if cs.n_nodes != g.n:
        raise ValidationError(f"{cs.algorithm}: community set does not belong to this graph")


def set_tv(g: Graph, cp: CommunitySet, ca: CommunitySet) -> SetTv:
    _check(g, cp)
    _check(g, ca)
    assignment = pair_communities(cp, ca)
    values = tuple(
        pair_tv(g, p, cp.communities[p.primary_index], ca.communities[p.alt_index])
        for p in assignment.pairs
    )
    value = sum(v.value for v in values) / len(values) if values else 0.0
    return SetTv(value, values, assignment)


def topological_variance(g: Graph, cp: CommunitySet, ca: CommunitySet) -> float:
    """Scalar shortcut for ``set_tv(g, cp, ca).value``."""
    return set_tv(g, cp, ca).value


def thread_limit(default: int | None = None) -> int:
    raw = os.environ.get("COMMDIFF_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return default or min(8, os.cpu_count() or 1)


@dataclass(frozen=True)
class TvMatrix:
    """``values[p, a]`` is TV with algorithm ``p`` as primary and ``a`` as alternative."""

    algorithms: tuple[str, ...]
    values: np.ndarray
    dataset: str = ""
    pair_counts: np.ndarray | None = None
    skipped_counts: np.ndarray | None = None

    def heatmap(self) -> np.ndarray:
        """Rows = alternative, columns = primary."""
        return self.values.T


def tv_matrix(g: Graph, sets: Sequence[CommunitySet], n_jobs: int | None = None) -> TvMatrix:
    if len(sets) < 2:
        raise InsufficientAlgorithmsError("a TV matrix needs at least two community sets")
    labels = tuple(cs.algorithm for cs in sets)
    if len(set(labels)) != len(labels):
        raise ValidationError(f"duplicate algorithm labels: {labels}")
    m = len(sets)
    cells = [(p, a) for p in range(m) for a in range(m) if p != a]
    workers = n_jobs or thread_limit()
    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda pa: set_tv(g, sets[pa[0]], sets[pa[1]]), cells))
    else:
        results = [set_tv(g, sets[p], sets[a]) for p, a in cells]
    values = np.zeros((m, m))
    pair_counts = np.zeros((m, m), dtype=int)
    skipped = np.zeros((m, m), dtype=int)
    for (p, a), res in zip(cells, results):
        values[p, a] = res.value
        pair_counts[p, a] = res.pair_count
        skipped[p, a] = len(res.assignment.skipped)
    return TvMatrix(labels, values, sets[0].dataset, pair_counts, skipped)
