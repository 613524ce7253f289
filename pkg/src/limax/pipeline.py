"""End-to-end analysis of one problem instance.

Chains the stages (walks, walk statistics, network, local-optimum scoring,
network metrics) into a single bundle so library users and the CLI share one
code path. All randomness in the analysis stages (random node group,
permutation baseline) is seeded from the walk master seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .landscapes import Problem
from .localopt import (
    MEASURES,
    REFERENCES,
    LocalOptimaCounts,
    PullEvaluation,
    count_local_optima,
    evaluate_pull_measure,
    los_table,
    plf_table,
    pull_value_table,
)
from .netmetrics import (
    CentralityComparison,
    EdgeMixing,
    TopNodes,
    centrality,
    centrality_comparison,
    edge_mixing,
    eligible_pool,
    massive_central,
    newman_assortativity,
    permuted_assortativity,
    top_value_nodes,
    viscosity_centrality_correlation,
)
from .network import LimaxNetwork, NetworkCounts, NodeStatsTable, build_network, network_counts
from .rng import mix64
from .walker import LimaxWalker, WalkSet
from .walkstats import WalkSetSummary, aggregate_walkset

DEFAULT_PERMUTATIONS = 30


def default_massive_top_fraction(n: int) -> float:
    # larger spaces use a tighter cutoff to keep the qualifying set small
    return 0.25 if n <= 14 else 0.10


@dataclass(frozen=True)
class PullMeasureStats:
    median: float
    mean: float
    std: float


@dataclass(eq=False)
class InstanceAnalysis:
    problem: Problem
    walk_seed: int
    walkset: WalkSet
    walk_summary: WalkSetSummary
    network: LimaxNetwork
    node_stats: NodeStatsTable
    counts: NetworkCounts
    plf: np.ndarray
    los: np.ndarray
    local_counts: LocalOptimaCounts
    pull_evaluations: dict[tuple[str, str], PullEvaluation]
    pull_stats: dict[str, PullMeasureStats]  # over all 2^n nodes
    centrality: np.ndarray
    pool: np.ndarray
    top: TopNodes
    centrality_groups: CentralityComparison
    pearson: float
    spearman: float
    assortativity: float
    assortativity_permuted: list[float]
    mixing: EdgeMixing
    double_edge_count: int
    single_edge_count: int
    massive_top_fraction: float
    massive_threshold: float
    massive_node_count: int
    massive_central: float

    @property
    def cell(self) -> str:
        p = self.problem
        if p.nk is not None:
            return f"nk_{p.n}_{p.nk.k}"
        return f"{p.kind}_{p.n}"


def analyze_instance(
    problem: Problem,
    walk_seed: int,
    max_step: int | None = None,
    permutations: int = DEFAULT_PERMUTATIONS,
    massive_top_fraction: float | None = None,
    walkset: WalkSet | None = None,
) -> InstanceAnalysis:
    """Run (or reuse) the full walk enumeration and compute every diagnostic."""
    if walkset is None:
        walkset = LimaxWalker(problem).run_all(walk_seed, max_step)
    summary = aggregate_walkset(walkset)
    net = build_network(walkset)
    stats = NodeStatsTable(net)
    counts = network_counts(net, stats)
    plf_values = plf_table(problem)
    los_values = los_table(stats)
    local_counts = count_local_optima(problem, stats)
    optima = problem.global_optima()

    pull_evaluations = {
        (measure, reference): evaluate_pull_measure(
            stats, plf_values, los_values, optima, measure, reference
        )
        for measure in MEASURES
        for reference in REFERENCES
    }
    pull_stats = {}
    for measure in MEASURES:
        values = pull_value_table(stats, measure)
        pull_stats[measure] = PullMeasureStats(
            median=float(np.median(values)),
            mean=float(values.mean()),
            std=float(values.std(ddof=1)),
        )

    cent = centrality(walkset)
    pool = eligible_pool(stats, optima)
    if pool.size == 0:
        # fully degenerate landscape (every node optimal or never entered)
        empty = np.array([], dtype=np.int64)
        top = TopNodes(threshold=math.nan, nodes=empty)
        groups = CentralityComparison(*([math.nan] * 9), top_size=0, pool_size=0)
        pearson = spearman = math.nan
    else:
        top = top_value_nodes(stats.viscosity, pool, top_fraction=0.25)
        groups = centrality_comparison(cent, pool, top, sample_seed=mix64(walk_seed, 1))
        pearson, spearman = viscosity_centrality_correlation(stats.viscosity, cent, pool)

    assort = newman_assortativity(net, stats.viscosity)
    permuted = permuted_assortativity(
        net, stats.viscosity, permutations, seed=mix64(walk_seed, 2),
        multiplicity_weighted=True, symmetric=True,
    )
    mixing = edge_mixing(net, top)

    fraction = massive_top_fraction if massive_top_fraction is not None else default_massive_top_fraction(problem.n)
    if fraction == 0.25 or pool.size == 0:
        massive_top = top
    else:
        massive_top = top_value_nodes(stats.viscosity, pool, top_fraction=fraction)
    massive = (
        massive_central(massive_top.nodes, problem.n) if massive_top.nodes.size >= 2 else math.nan
    )

    return InstanceAnalysis(
        problem=problem,
        walk_seed=walk_seed,
        walkset=walkset,
        walk_summary=summary,
        network=net,
        node_stats=stats,
        counts=counts,
        plf=plf_values,
        los=los_values,
        local_counts=local_counts,
        pull_evaluations=pull_evaluations,
        pull_stats=pull_stats,
        centrality=cent,
        pool=pool,
        top=top,
        centrality_groups=groups,
        pearson=pearson,
        spearman=spearman,
        assortativity=assort,
        assortativity_permuted=permuted,
        mixing=mixing,
        double_edge_count=round(mixing.double_fraction * net.unique_edges),
        single_edge_count=round(mixing.single_fraction * net.unique_edges),
        massive_top_fraction=fraction,
        massive_threshold=massive_top.threshold,
        massive_node_count=int(massive_top.nodes.size),
        massive_central=massive,
    )
