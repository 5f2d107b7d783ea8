"""Aggregating TV matrices into per-dataset and overall rankings.

ATV is a primary algorithm's TV row averaged over all ``m`` algorithms, its
own (zero) self-comparison included. Per dataset, algorithms are ranked by
descending ATV (DTV); overall, by descending mean ATV across datasets (OTV).
Ties share the smallest rank and the following rank is skipped
(competition ranking, as in ``1, 2, 2, 4``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .exceptions import InsufficientAlgorithmsError, MissingCellError, ValidationError
from .topovariance import TvMatrix, tv_matrix


def _as_square(tv) -> np.ndarray:
    values = np.asarray(tv.values if isinstance(tv, TvMatrix) else tv, dtype=float)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValidationError(f"TV matrix must be square, got shape {values.shape}")
    if values.shape[0] < 2:
        raise InsufficientAlgorithmsError("ATV needs at least two algorithms")
    return values


def atv(tv, algo_index: int) -> float:
    """Average TV of one primary algorithm (a row of the TV matrix).

    The diagonal is treated as zero whatever it holds.
    """
    values = _as_square(tv)
    row = values[algo_index]
    return float((row.sum() - row[algo_index]) / values.shape[0])


def atv_vector(tv) -> np.ndarray:
    values = _as_square(tv)
    return (values.sum(axis=1) - np.diag(values)) / values.shape[0]


def competition_ranks(scores) -> np.ndarray:
    """Descending competition ranks: rank = 1 + number of strictly larger scores."""
    s = np.asarray(scores, dtype=float)
    return np.array([1 + int(np.sum(s > x)) for x in s], dtype=int)


def dtv_ranks(atv_column) -> np.ndarray:
    col = np.asarray(atv_column, dtype=float)
    if col.ndim != 1 or col.size < 2:
        raise InsufficientAlgorithmsError("ranking needs at least two algorithms")
    if np.isnan(col).any():
        raise MissingCellError("ATV column has missing cells")
    return competition_ranks(col)


def otv_ranks(atv_grid) -> tuple[np.ndarray, np.ndarray]:
    """Mean ATV per algorithm across datasets and its descending ranks."""
    grid = np.asarray(atv_grid, dtype=float)
    if grid.ndim != 2 or grid.shape[1] < 1:
        raise ValidationError("ATV grid must be algorithms x datasets with at least one dataset")
    if grid.shape[0] < 2:
        raise InsufficientAlgorithmsError("ranking needs at least two algorithms")
    if np.isnan(grid).any():
        raise MissingCellError("ATV grid has missing cells")
    scores = grid.mean(axis=1)
    return scores, competition_ranks(scores)


@dataclass(frozen=True)
class RankTable:
    algorithms: tuple[str, ...]
    datasets: tuple[str, ...]
    atv: np.ndarray  # algorithms x datasets
    dtv: np.ndarray  # algorithms x datasets, integer ranks
    otv_score: np.ndarray
    otv: np.ndarray

    def dtv_for(self, dataset: str) -> dict[str, int]:
        k = self.datasets.index(dataset)
        return dict(zip(self.algorithms, self.dtv[:, k].tolist()))

    def otv_for(self) -> dict[str, int]:
        return dict(zip(self.algorithms, self.otv.tolist()))


def rank_table(atv_grid, algorithms: Sequence[str], datasets: Sequence[str]) -> RankTable:
    """Build DTV and OTV rankings from an algorithms x datasets ATV grid.

    A dataset column with a missing cell raises :class:`MissingCellError`
    naming that dataset. A single-algorithm grid is accepted (ATVs were
    computed elsewhere) and ranks that algorithm 1 everywhere.
    """
    grid = np.asarray(atv_grid, dtype=float)
    if grid.shape != (len(algorithms), len(datasets)) or not datasets:
        raise ValidationError(f"grid shape {grid.shape} does not match labels")
    if len(algorithms) == 1:
        if np.isnan(grid).any():
            raise MissingCellError(f"algorithm {algorithms[0]!r} has missing cells")
        ones = np.ones(grid.shape, dtype=int)
        return RankTable(tuple(algorithms), tuple(datasets), grid, ones, grid.mean(axis=1), ones[:, 0])
    dtv = np.zeros(grid.shape, dtype=int)
    for k, name in enumerate(datasets):
        if np.isnan(grid[:, k]).any():
            missing = [a for a, x in zip(algorithms, grid[:, k]) if np.isnan(x)]
            raise MissingCellError(f"dataset {name!r}: no ATV for {', '.join(missing)}")
        dtv[:, k] = dtv_ranks(grid[:, k])
    scores, otv = otv_ranks(grid)
    return RankTable(tuple(algorithms), tuple(datasets), grid, dtv, scores, otv)


def rank_tv_matrices(matrices: Sequence[TvMatrix]) -> RankTable:
    """Rank algorithms from one TV matrix per dataset.

    Every matrix must cover the same algorithms; rows are aligned by label.
    """
    if not matrices:
        raise ValidationError("no TV matrices to rank")
    algorithms = matrices[0].algorithms
    columns = []
    for mat in matrices:
        if set(mat.algorithms) != set(algorithms):
            raise MissingCellError(
                f"dataset {mat.dataset!r}: algorithms {sorted(mat.algorithms)} differ from {sorted(algorithms)}"
            )
        order = [mat.algorithms.index(a) for a in algorithms]
        columns.append(atv_vector(mat.values[np.ix_(order, order)]))
    grid = np.column_stack(columns)
    return rank_table(grid, algorithms, [mat.dataset for mat in matrices])


class TopologicalVarianceRanker(BaseEstimator):
    """Rank community-detection algorithms by topological variance.

    ``fit`` takes a mapping ``dataset -> (graph, [CommunitySet, ...])``.
    Every dataset must carry one community set per algorithm, labelled by
    ``CommunitySet.algorithm``.

    Attributes set by ``fit``: ``tv_matrices_``, ``atv_`` (algorithms x
    datasets), ``dtv_``, ``otv_score_``, ``otv_``, ``algorithms_``,
    ``datasets_`` and ``rank_table_``.
    """

    def __init__(self, n_jobs=None):
        self.n_jobs = n_jobs

    def fit(self, X: Mapping, y=None):
        if not X:
            raise ValidationError("no datasets given")
        matrices = []
        for name, (graph, sets) in X.items():
            sets = [cs if cs.dataset == name else cs.relabel(dataset=name) for cs in sets]
            matrices.append(tv_matrix(graph, sets, n_jobs=self.n_jobs))
        self.tv_matrices_ = {mat.dataset: mat for mat in matrices}
        return self._store(rank_tv_matrices(matrices))

    def fit_atv(self, atv_grid, algorithms, datasets):
        """Fit from a precomputed ATV grid instead of community sets."""
        self.tv_matrices_ = {}
        return self._store(rank_table(atv_grid, algorithms, datasets))

    def _store(self, table: RankTable):
        self.rank_table_ = table
        self.algorithms_ = table.algorithms
        self.datasets_ = table.datasets
        self.atv_ = table.atv
        self.dtv_ = table.dtv
        self.otv_score_ = table.otv_score
        self.otv_ = table.otv
        return self

    def predict(self, X=None):
        """Overall ranks, one per algorithm in ``algorithms_`` order."""
        check_is_fitted(self, "otv_")
        return self.otv_

    def score(self, X=None, y=None):
        """Best mean ATV reached by any algorithm."""
        check_is_fitted(self, "otv_score_")
        return float(self.otv_score_.max())
