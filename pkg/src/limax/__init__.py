"""Slow self-avoiding adaptive walks and their networks.

Run one Limax walk from every point of a bit-string landscape, then analyze
the walks (length, distance, compressibility, hierarchy) and the directed
weighted network they form (degrees, strengths, viscosity, local-optimum
scores, centrality, assortativity).
"""

from .bits import hamming, neighbors_at_distance
from .landscapes import (
    NKInstance,
    Problem,
    enumerate_global_optima,
    load_problem,
    nk_generate,
    nk_generate_unique_optimum,
    save_problem,
)
from .localopt import (
    LocalOptimaCounts,
    PullEvaluation,
    PullValues,
    count_local_optima,
    evaluate_pull_measure,
    los,
    los_table,
    plf,
    plf_table,
    pull_value_table,
    pull_values,
)
from .netmetrics import (
    CentralityComparison,
    EdgeMixing,
    TopNodes,
    assortativity,
    centrality,
    centrality_comparison,
    edge_mixing,
    eligible_pool,
    massive_central,
    newman_assortativity,
    permuted_assortativity,
    top_quartile_nodes,
    top_value_nodes,
    viscosity_centrality_correlation,
)
from .network import (
    LimaxNetwork,
    NetworkCounts,
    NodeAggregates,
    NodeStatsTable,
    build_network,
    network_counts,
    node_aggregates,
    reversed_cumulative_distribution,
)
from .rng import SplitMix64, mix64
from .stats import Summary, summarize
from .walker import LimaxWalker, Walk, WalkSet, limax_walk, load_walkset, run_all_walks, save_walkset
from .walkstats import WalkMetrics, WalkSetSummary, aggregate_walkset, compress, walk_metrics

__version__ = "0.1.0"

__all__ = [
    "CentralityComparison",
    "EdgeMixing",
    "LimaxNetwork",
    "LimaxWalker",
    "LocalOptimaCounts",
    "NKInstance",
    "NetworkCounts",
    "NodeAggregates",
    "NodeStatsTable",
    "Problem",
    "PullEvaluation",
    "PullValues",
    "SplitMix64",
    "Summary",
    "TopNodes",
    "Walk",
    "WalkMetrics",
    "WalkSet",
    "WalkSetSummary",
    "aggregate_walkset",
    "assortativity",
    "build_network",
    "centrality",
    "centrality_comparison",
    "compress",
    "count_local_optima",
    "edge_mixing",
    "eligible_pool",
    "enumerate_global_optima",
    "evaluate_pull_measure",
    "hamming",
    "limax_walk",
    "load_problem",
    "load_walkset",
    "los",
    "los_table",
    "massive_central",
    "mix64",
    "neighbors_at_distance",
    "network_counts",
    "newman_assortativity",
    "nk_generate",
    "nk_generate_unique_optimum",
    "node_aggregates",
    "permuted_assortativity",
    "plf",
    "plf_table",
    "pull_value_table",
    "pull_values",
    "reversed_cumulative_distribution",
    "run_all_walks",
    "save_problem",
    "save_walkset",
    "summarize",
    "top_quartile_nodes",
    "top_value_nodes",
    "viscosity_centrality_correlation",
    "walk_metrics",
]
