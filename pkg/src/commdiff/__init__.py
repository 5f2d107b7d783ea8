"""Direct comparison and ranking of community structures by topological variance."""

from .communities import CommunitySet, dump_communities, load_communities, parse_communities, validate_against
from .detectors import DetectorConfig, GreedyModularity, LabelPropagation, run_greedy_modularity, run_lpa
from .exceptions import (
    CommdiffError,
    EmptyInputError,
    InsufficientAlgorithmsError,
    MissingCellError,
    ParseError,
    UnsupportedMetricError,
    ValidationError,
)
from .graph import Graph, GraphStats, load_edge_list, neighbors, parse_edge_list, stats
from .metrics import MetricReport, conductance, isolability, metric_report, modularity
from .pairing import ComparablePair, PairAssignment, analytical_nodes, pair_communities
from .ranking import RankTable, TopologicalVarianceRanker, atv, dtv_ranks, otv_ranks, rank_table
from .topovariance import PairTv, SetTv, TvMatrix, pair_tv, set_tv, topological_variance, tv_matrix

__version__ = "0.1.0"

__all__ = [
    "CommunitySet", "dump_communities", "load_communities", "parse_communities", "validate_against",
    "DetectorConfig", "GreedyModularity", "LabelPropagation", "run_greedy_modularity", "run_lpa",
    "CommdiffError", "EmptyInputError", "InsufficientAlgorithmsError", "MissingCellError", "ParseError",
    "UnsupportedMetricError", "ValidationError",
    "Graph", "GraphStats", "load_edge_list", "neighbors", "parse_edge_list", "stats",
    "MetricReport", "conductance", "isolability", "metric_report", "modularity",
    "ComparablePair", "PairAssignment", "analytical_nodes", "pair_communities",
    "RankTable", "TopologicalVarianceRanker", "atv", "dtv_ranks", "otv_ranks", "rank_table",
    "PairTv", "SetTv", "TvMatrix", "pair_tv", "set_tv", "topological_variance", "tv_matrix",
]
