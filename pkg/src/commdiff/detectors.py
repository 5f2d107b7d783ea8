"""Seeded reference detectors: asynchronous label propagation and greedy
modularity agglomeration.

Both return partitions whose communities are ordered by their smallest node
index, so serialized output depends only on the graph and the seed.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Literal

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .communities import CommunitySet
from .exceptions import EmptyInputError, ValidationError
from .graph import Graph


@dataclass(frozen=True)
class DetectorConfig:
    algorithm: Literal["lpa", "greedy_modularity"] = "lpa"
    seed: int = 0
    max_iterations: int = 100


def _check_graph(g):
    if not isinstance(g, Graph):
        raise ValidationError(f"expected a Graph, got {type(g).__name__}")
    if g.n == 0:
        raise EmptyInputError("graph has no nodes")


def _canonical(groups, n, algorithm, dataset=""):
    comms = sorted((frozenset(c) for c in groups), key=min)
    return CommunitySet(algorithm, dataset, tuple(comms), n)


def label_propagation(g: Graph, seed: int = 0, max_iterations: int = 100) -> tuple[list[int], int]:
    """Asynchronous label propagation.

    Returns per-node labels and the number of sweeps run. Each sweep visits
    nodes in a freshly shuffled order. A node keeps its label while that label
    is among the most frequent in its neighborhood; otherwise it takes one of
    the most frequent labels, chosen uniformly. A sweep without any change is
    a fixpoint and stops the run.
    """
    _check_graph(g)
    rng = np.random.default_rng(seed)
    labels = list(range(g.n))
    order = np.arange(g.n)
    sweeps = 0
    for sweeps in range(1, max_iterations + 1):
        rng.shuffle(order)
        changed = False
        for v in order.tolist():
            nbrs = g.adjacency[v]
            if not nbrs:
                continue
            counts: dict[int, int] = {}
            for u in nbrs:
                lab = labels[u]
                counts[lab] = counts.get(lab, 0) + 1
            top = max(counts.values())
            best = sorted(lab for lab, c in counts.items() if c == top)
            if labels[v] in best:
                continue
            labels[v] = best[0] if len(best) == 1 else best[int(rng.integers(len(best)))]
            changed = True
        if not changed:
            break
    return labels, sweeps


def run_lpa(g: Graph, cfg: DetectorConfig = DetectorConfig()) -> CommunitySet:
    labels, _ = label_propagation(g, cfg.seed, cfg.max_iterations)
    groups: dict[int, set[int]] = {}
    for v, lab in enumerate(labels):
        groups.setdefault(lab, set()).add(v)
    return _canonical(groups.values(), g.n, "lpa")


def greedy_modularity(g: Graph) -> tuple[list[frozenset[int]], list[tuple[int, int, float]]]:
    """Clauset-Newman-Moore style agglomeration.

    Starts from singletons and repeatedly merges the pair of adjacent
    communities with the largest modularity gain while that gain is
    positive. Gains are compared as exact integers
    ``2m * e_ij - d_i * d_j`` (``e_ij`` = edges between, ``d`` = total
    degree), so ties are exact and resolve to the smallest ``(i, j)`` pair.
    The merged community keeps the smaller index.

    Returns the communities and the merge history ``(i, j, gain)``.
    """
    _check_graph(g)
    m = g.m
    members = {v: {v} for v in range(g.n)}
    if m == 0:
        return [frozenset(c) for c in members.values()], []
    two_m = 2 * m
    degree = {v: len(g.adjacency[v]) for v in range(g.n)}
    between: dict[int, dict[int, int]] = {v: {u: 1 for u in g.adjacency[v]} for v in range(g.n)}

    def key(i, j):
        return two_m * between[i][j] - degree[i] * degree[j]

    heap = [(-key(i, j), i, j) for i in between for j in between[i] if i < j]
    heapq.heapify(heap)
    history = []
    while heap:
        neg, i, j = heapq.heappop(heap)
        if i not in members or j not in members or j not in between[i] or -neg != key(i, j):
            continue
        gain = -neg
        if gain <= 0:
            break
        # merge j into i
        members[i] |= members.pop(j)
        degree[i] += degree.pop(j)
        for k, e in between.pop(j).items():
            if k == i:
                continue
            between[k].pop(j)
            between[k][i] = between[k].get(i, 0) + e
            between[i][k] = between[i].get(k, 0) + e
        del between[i][j]
        history.append((i, j, gain / (2 * m * m)))
        for k in between[i]:
            a, b = (i, k) if i < k else (k, i)
            heapq.heappush(heap, (-key(a, b), a, b))
    return [frozenset(c) for c in members.values()], history


def run_greedy_modularity(g: Graph, cfg: DetectorConfig = DetectorConfig("greedy_modularity")) -> CommunitySet:
    comms, _ = greedy_modularity(g)
    return _canonical(comms, g.n, "greedy_modularity")


def run_detector(g: Graph, cfg: DetectorConfig) -> CommunitySet:
    if cfg.algorithm == "lpa":
        return run_lpa(g, cfg)
    if cfg.algorithm == "greedy_modularity":
        return run_greedy_modularity(g, cfg)
    raise ValidationError(f"unknown detector {cfg.algorithm!r}")


class _DetectorBase(BaseEstimator, ClusterMixin):
    def fit_predict(self, X, y=None):
        """Per-node community index, in the graph's node order."""
        return self.fit(X).labels_

    def _store(self, cs: CommunitySet):
        self.communities_ = cs
        self.labels_ = np.asarray(cs.labels())
        self.n_communities_ = len(cs)
        return self

    def predict(self, X=None):
        check_is_fitted(self, "labels_")
        return self.labels_


class LabelPropagation(_DetectorBase):
    """Seeded asynchronous label propagation on a :class:`Graph`."""

    def __init__(self, seed=0, max_iter=100):
        self.seed = seed
        self.max_iter = max_iter

    def fit(self, X, y=None):
        labels, sweeps = label_propagation(X, self.seed, self.max_iter)
        self.n_iter_ = sweeps
        groups: dict[int, set[int]] = {}
        for v, lab in enumerate(labels):
            groups.setdefault(lab, set()).add(v)
        return self._store(_canonical(groups.values(), X.n, "lpa"))


class GreedyModularity(_DetectorBase):
    """Greedy modularity agglomeration on a :class:`Graph`. Deterministic."""

    def fit(self, X, y=None):
        comms, history = greedy_modularity(X)
        self.merges_ = history
        return self._store(_canonical(comms, X.n, "greedy_modularity"))
