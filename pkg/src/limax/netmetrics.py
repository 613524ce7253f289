"""Walk-network diagnostics built on node viscosity.

Centrality here is walk-traversal centrality: the number of walks passing
through a node as an interior point. Global optima and source nodes are
excluded from every comparative statistic (their pull values are extreme by
construction), which is what the *eligible pool* captures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as sps

from .network import LimaxNetwork, NodeStatsTable
from .rng import mix64
from .walker import WalkSet


def centrality(ws: WalkSet) -> np.ndarray:
    """Per-node count of walks that pass through the node.

    A node is counted for a walk when it appears as neither the start nor
    the terminal; walks are self-avoiding so one walk counts at most once.
    """
    counts = np.zeros(1 << ws.n, dtype=np.int64)
    for walk in ws.walks:
        for to, _ in walk.moves[:-1]:
            counts[to] += 1
    return counts


def eligible_pool(stats: NodeStatsTable, global_optima) -> np.ndarray:
    keep = ~stats.is_source
    for g in global_optima:
        keep[g] = False
    return np.flatnonzero(keep)


@dataclass(frozen=True)
class TopNodes:
    threshold: float
    nodes: np.ndarray  # pool nodes with value >= threshold (ties included)


def top_value_nodes(values: np.ndarray, pool: np.ndarray, top_fraction: float = 0.25) -> TopNodes:
    """Pool nodes whose value reaches the (1 - top_fraction) percentile.

    The threshold is the nearest-rank percentile over the values of all
    nodes (never-entered nodes sit at 0 and anchor the lower tail); with
    heavy ties the selected set can noticeably exceed top_fraction of the
    space. Membership is then restricted to the given pool.
    """
    if pool.size == 0:
        raise ValueError("empty eligible pool")
    if not 0 < top_fraction < 1:
        raise ValueError(f"top_fraction must be in (0, 1), got {top_fraction}")
    ranked = np.sort(values)
    rank = math.ceil((1.0 - top_fraction) * ranked.size)  # 1-indexed nearest rank
    threshold = float(ranked[max(rank, 1) - 1])
    return TopNodes(threshold=threshold, nodes=pool[values[pool] >= threshold])


def top_quartile_nodes(values: np.ndarray, pool: np.ndarray) -> TopNodes:
    """Pool nodes whose value reaches the 75th nearest-rank percentile."""
    return top_value_nodes(values, pool, top_fraction=0.25)


@dataclass(frozen=True)
class CentralityComparison:
    top_mean: float
    top_median: float
    top_std: float
    all_mean: float
    all_median: float
    all_std: float
    random_mean: float
    random_median: float
    random_std: float
    top_size: int
    pool_size: int


def _group(values: np.ndarray) -> tuple[float, float, float]:
    std = float(values.std(ddof=1)) if values.size > 1 else math.nan
    return float(values.mean()), float(np.median(values)), std


def centrality_comparison(
    cent: np.ndarray, pool: np.ndarray, top: TopNodes, sample_seed: int
) -> CentralityComparison:
    """Mean/median/std centrality of the top-viscosity nodes vs the whole
    pool vs an equal-size random pool sample."""
    rng = np.random.default_rng(mix64(sample_seed))
    random_nodes = rng.choice(pool, size=top.nodes.size, replace=False)
    top_mean, top_median, top_std = _group(cent[top.nodes])
    all_mean, all_median, all_std = _group(cent[pool])
    random_mean, random_median, random_std = _group(cent[random_nodes])
    return CentralityComparison(
        top_mean=top_mean, top_median=top_median, top_std=top_std,
        all_mean=all_mean, all_median=all_median, all_std=all_std,
        random_mean=random_mean, random_median=random_median, random_std=random_std,
        top_size=int(top.nodes.size),
        pool_size=int(pool.size),
    )


def viscosity_centrality_correlation(
    viscosity: np.ndarray, cent: np.ndarray, pool: np.ndarray
) -> tuple[float, float]:
    """(Pearson, Spearman) over the eligible pool; nan when degenerate."""
    x = viscosity[pool]
    y = cent[pool].astype(np.float64)
    if pool.size < 2 or x.std() == 0 or y.std() == 0:
        return math.nan, math.nan
    pearson = float(sps.pearsonr(x, y).statistic)
    spearman = float(sps.spearmanr(x, y).statistic)
    return pearson, spearman


def assortativity(
    net: LimaxNetwork,
    values: np.ndarray,
    multiplicity_weighted: bool = False,
    symmetric: bool = False,
) -> float:
    """Correlation of a node attribute across edge endpoints.

    The default is the plain Pearson correlation of (value(from), value(to))
    over distinct directed edges. ``multiplicity_weighted`` counts each
    traversal of an edge (the multigraph view); ``symmetric`` pools both
    endpoints into one marginal, which is the form of Newman's mixing
    coefficient for undirected networks. nan when degenerate.
    """
    if net.unique_edges < 2:
        return math.nan
    x = values[net.edge_from].astype(np.float64)
    y = values[net.edge_to].astype(np.float64)
    w = net.edge_mult.astype(np.float64) if multiplicity_weighted else np.ones_like(x)
    total = w.sum()
    if symmetric:
        mean = float((w * (x + y)).sum() / (2 * total))
        num = float((w * x * y).sum() / total) - mean * mean
        den = float((w * (x * x + y * y)).sum() / (2 * total)) - mean * mean
        return num / den if den > 0 else math.nan
    mean_x = float((w * x).sum() / total)
    mean_y = float((w * y).sum() / total)
    cov = float((w * (x - mean_x) * (y - mean_y)).sum() / total)
    var_x = float((w * (x - mean_x) ** 2).sum() / total)
    var_y = float((w * (y - mean_y) ** 2).sum() / total)
    if var_x == 0 or var_y == 0:
        return math.nan
    return cov / math.sqrt(var_x * var_y)


def newman_assortativity(net: LimaxNetwork, values: np.ndarray) -> float:
    """Newman's mixing coefficient applied to the walk multigraph: every
    traversal counts as an edge and the two endpoint marginals are pooled."""
    return assortativity(net, values, multiplicity_weighted=True, symmetric=True)


def permuted_assortativity(
    net: LimaxNetwork, values: np.ndarray, permutations: int = 30, seed: int = 0,
    multiplicity_weighted: bool = False, symmetric: bool = False,
) -> list[float]:
    """Assortativity after randomly permuting the attribute across nodes;
    the null baseline for the observed coefficient (same formula options)."""
    out = []
    for i in range(permutations):
        rng = np.random.default_rng(mix64(seed, i))
        out.append(assortativity(net, values[rng.permutation(values.size)],
                                 multiplicity_weighted, symmetric))
    return out


@dataclass(frozen=True)
class EdgeMixing:
    double_fraction: float  # both endpoints in the top set
    single_fraction: float  # exactly one endpoint in the top set
    ratio: float  # double / single; nan when single is 0


def edge_mixing(net: LimaxNetwork, top: TopNodes) -> EdgeMixing:
    edges = net.unique_edges
    if edges == 0:
        return EdgeMixing(double_fraction=0.0, single_fraction=0.0, ratio=math.nan)
    in_top = np.zeros(net.size, dtype=bool)
    in_top[top.nodes] = True
    tf = in_top[net.edge_from]
    tt = in_top[net.edge_to]
    double = int(np.count_nonzero(tf & tt))
    single = int(np.count_nonzero(tf ^ tt))
    return EdgeMixing(
        double_fraction=double / edges,
        single_fraction=single / edges,
        ratio=double / single if single else math.nan,
    )


def massive_central(nodes: np.ndarray, n: int) -> float:
    """Average Hamming distance over all unordered pairs of the given nodes.

    Computed per bit position (a position contributes ones*zeros pairs),
    which is exact and avoids materializing the pair matrix.
    """
    arr = np.asarray(nodes, dtype=np.int64)
    if arr.size < 2:
        raise ValueError("massive_central needs at least 2 nodes")
    m = arr.size
    total = 0
    for b in range(n):
        ones = int(((arr >> b) & 1).sum())
        total += ones * (m - ones)
    return total / (m * (m - 1) / 2)
