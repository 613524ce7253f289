"""Local-optimum identification and pull-measure evaluation.

Two independent detectors: *plf*, the fraction of strictly less fit strings
in a node's 1-bit-flip neighbourhood (plf = 1.0 marks a local optimum), and
*los*, a score computed purely from a node's in/out step-size statistics in
the walk network. Three pull measures (in/out ratios of degree,
step-strength, invstep-strength) are then ranked against those references by
counting false positives and, for los, sequence edit and rank distances.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .landscapes import Problem
from .network import NodeAggregates, NodeStatsTable

MEASURES = ("degree", "step_strength", "invstep_strength")
REFERENCES = ("plf", "los")

# sentinel for nodes walks enter but never leave; such a node is certainly a
# local optimum (in these networks, the global optimum), and the exact value
# is irrelevant because evaluation filters the global optimum out anyway
_TRAPPED_SCORE = 7.0


def plf(problem: Problem, g: int) -> float:
    """Fraction of the n 1-bit neighbours that are strictly less fit."""
    own = problem.evaluate(g)
    lower = sum(1 for i in range(problem.n) if problem.evaluate(g ^ (1 << i)) < own)
    return lower / problem.n


def plf_table(problem: Problem) -> np.ndarray:
    table = problem.fitness_table()
    values = np.arange(problem.size, dtype=np.int64)
    lower = np.zeros(problem.size, dtype=np.int64)
    for i in range(problem.n):
        lower += table[values ^ (1 << i)] < table
    return lower / problem.n


def los(agg: NodeAggregates) -> float:
    """Local-optimum score from a node's in/out step-size statistics.

    Nodes never entered score 0. Nodes entered but never left get the
    trapped sentinel. Otherwise the score sums the positive parts of
    (out_mode - in_mode), (out_avg - in_avg) and (out_min - in_max): leaving
    needing bigger steps than arriving signals a local optimum.
    """
    if agg.in_max == 0:
        return 0.0
    if agg.out_min == 0:
        return _TRAPPED_SCORE
    score = 0.0
    if agg.out_mode > agg.in_mode:
        score += agg.out_mode - agg.in_mode
    if agg.out_avg > agg.in_avg:
        score += agg.out_avg - agg.in_avg
    if agg.out_min > agg.in_max:
        score += agg.out_min - agg.in_max
    return score


def los_table(stats: NodeStatsTable) -> np.ndarray:
    score = np.maximum(stats.out_mode - stats.in_mode, 0).astype(np.float64)
    score += np.maximum(stats.out_avg - stats.in_avg, 0.0)
    score += np.maximum(stats.out_min - stats.in_max, 0)
    score[stats.out_min == 0] = _TRAPPED_SCORE
    score[stats.in_max == 0] = 0.0
    return score


@dataclass(frozen=True)
class PullValues:
    pull_degree: float
    pull_step_strength: float
    pull_invstep_strength: float  # this is node viscosity


def _pull(in_value: float, out_value: float) -> float:
    if in_value == 0:
        return 0.0
    if out_value == 0:
        return in_value
    return in_value / out_value


def pull_values(agg: NodeAggregates) -> PullValues:
    """In/out pull ratios; 0 for nodes nothing ever entered, the raw
    in-value for nodes nothing ever left."""
    return PullValues(
        pull_degree=_pull(agg.in_degree, agg.out_degree),
        pull_step_strength=_pull(agg.in_step_strength, agg.out_step_strength),
        pull_invstep_strength=_pull(agg.in_invstep_strength, agg.out_invstep_strength),
    )


def pull_value_table(stats: NodeStatsTable, measure: str) -> np.ndarray:
    pairs = {
        "degree": (stats.in_degree, stats.out_degree),
        "step_strength": (stats.in_step_strength, stats.out_step_strength),
        "invstep_strength": (stats.in_invstep_strength, stats.out_invstep_strength),
    }
    if measure not in pairs:
        raise ValueError(f"unknown pull measure {measure!r}")
    in_arr = pairs[measure][0].astype(np.float64)
    out_arr = pairs[measure][1].astype(np.float64)
    ratio = in_arr / np.where(out_arr == 0, 1.0, out_arr)
    return np.where(in_arr == 0, 0.0, np.where(out_arr == 0, in_arr, ratio))


@dataclass(frozen=True)
class PullEvaluation:
    measure: str
    reference: str
    false_positives: int
    error_rate: float
    edit_distance: int | None  # los reference only
    rank_distance: float | None  # los reference only
    evaluated_nodes: int
    degenerate: bool = False


def evaluate_pull_measure(
    stats: NodeStatsTable,
    plf_values: np.ndarray,
    los_values: np.ndarray,
    global_optima: Iterable[int],
    measure: str,
    reference: str,
) -> PullEvaluation:
    """Score one pull measure against one local-optimum reference.

    Nodes are sorted by decreasing local-optimum potential (descending pull
    for degree and invstep-strength, ascending for step-strength; ties by
    node id). False positives are the reference zeros appearing before the
    last reference positive. For the los reference, the positive scores in
    pull order are additionally compared position by position against the
    same scores sorted descending (the ideal ranking).
    """
    if reference not in REFERENCES:
        raise ValueError(f"unknown reference {reference!r}")
    size = len(stats)
    pull = pull_value_table(stats, measure)
    keep = pull > 0
    for g in global_optima:
        keep[g] = False
    nodes = np.flatnonzero(keep)
    if nodes.size == 0:
        return PullEvaluation(measure, reference, 0, 0.0, 0 if reference == "los" else None,
                              0.0 if reference == "los" else None, 0, degenerate=True)
    key = pull[nodes]
    if measure != "step_strength":
        key = -key
    ordered = nodes[np.lexsort((nodes, key))]
    if reference == "plf":
        ref = (plf_values[ordered] == 1.0).astype(np.float64)
    else:
        ref = los_values[ordered]
    positive = ref > 0
    if not positive.any():
        return PullEvaluation(measure, reference, 0, 0.0, 0 if reference == "los" else None,
                              0.0 if reference == "los" else None, int(nodes.size), degenerate=True)
    last_positive = int(np.flatnonzero(positive)[-1])
    false_positives = int(np.count_nonzero(~positive[: last_positive + 1]))
    edit: int | None = None
    rank: float | None = None
    if reference == "los":
        ideal = np.sort(ref[positive])[::-1]
        in_pull_order = ref[: last_positive + 1][positive[: last_positive + 1]]
        if not np.array_equal(np.sort(ideal), np.sort(in_pull_order)):
            raise AssertionError("pull-ordered los sequence is not a permutation of the ideal one")
        edit = int(np.count_nonzero(ideal != in_pull_order))
        rank = float(np.abs(ideal - in_pull_order).sum())
    return PullEvaluation(
        measure=measure,
        reference=reference,
        false_positives=false_positives,
        error_rate=false_positives / size,
        edit_distance=edit,
        rank_distance=rank,
        evaluated_nodes=int(nodes.size),
    )


@dataclass(frozen=True)
class LocalOptimaCounts:
    plf_count: int
    los_count: int
    mean_plf_of_los_positive: float  # 1.0 means every los-positive node is a true local optimum
    difference: int  # plf_count - los_count


def count_local_optima(problem: Problem, stats: NodeStatsTable) -> LocalOptimaCounts:
    plf_values = plf_table(problem)
    los_values = los_table(stats)
    los_positive = los_values > 0
    plf_count = int(np.count_nonzero(plf_values == 1.0))
    los_count = int(np.count_nonzero(los_positive))
    overlap = float(plf_values[los_positive].mean()) if los_count else math.nan
    return LocalOptimaCounts(
        plf_count=plf_count,
        los_count=los_count,
        mean_plf_of_los_positive=overlap,
        difference=plf_count - los_count,
    )
