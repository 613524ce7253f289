"""Shared fixtures for the acceptance suite.

The heavy corpus (30 full NK(14,2) runs plus 10 each of NK(14,6) and
NK(14,10), and one HIFF n=16 run) is computed once per session; criteria
consume compact per-instance records rather than the full analysis bundles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pytest

from limax import Problem, nk_generate_unique_optimum
from limax.pipeline import InstanceAnalysis, analyze_instance
from limax.rng import mix64

ACCEPT_SEED = 777
NK14_REPLICATES = {2: 30, 6: 10, 10: 10}


@dataclass(frozen=True)
class InstanceRecord:
    k: int
    replicate: int
    wdist_mean: float
    wvar_mean: float
    cr1_mean: float
    cr2_mean: float
    whier: float
    max_adaptive_length: int
    unique_edges: int
    source_count: int
    sink_count: int
    component_count: int
    total_moves: int
    sum_in_degree: int
    sum_out_degree: int
    sum_wlen: int
    visited_rejections: int
    plf_count: int
    los_count: int
    los_positive_all_plf_optima: bool
    false_positives: dict  # (measure, reference) -> count
    zero_error: dict  # (measure, reference) -> bool
    median_pull_degree: float
    median_pull_step_strength: float
    median_pull_invstep_strength: float
    assortativity: float
    assortativity_permuted_mean: float
    top_threshold: float
    top_count: int
    massive_central: float
    pearson: float
    spearman: float
    centrality_top_mean: float
    centrality_all_mean: float
    centrality_random_mean: float


def record_from_analysis(analysis: InstanceAnalysis, k: int, replicate: int) -> InstanceRecord:
    summary = analysis.walk_summary
    stats = analysis.node_stats
    los_positive = analysis.los > 0
    return InstanceRecord(
        k=k,
        replicate=replicate,
        wdist_mean=summary.wdist.mean,
        wvar_mean=summary.wvar.mean,
        cr1_mean=summary.cr1.mean,
        cr2_mean=summary.cr2.mean,
        whier=summary.whier,
        max_adaptive_length=summary.max_adaptive_length,
        unique_edges=analysis.counts.unique_edges,
        source_count=analysis.counts.source_count,
        sink_count=analysis.counts.sink_count,
        component_count=analysis.counts.component_count,
        total_moves=analysis.network.total_moves,
        sum_in_degree=int(stats.in_degree.sum()),
        sum_out_degree=int(stats.out_degree.sum()),
        sum_wlen=analysis.walkset.total_moves(),
        visited_rejections=analysis.walkset.visited_rejections,
        plf_count=analysis.local_counts.plf_count,
        los_count=analysis.local_counts.los_count,
        los_positive_all_plf_optima=bool(np.all(analysis.plf[los_positive] == 1.0)),
        false_positives={key: ev.false_positives for key, ev in analysis.pull_evaluations.items()},
        zero_error={key: ev.error_rate == 0.0 for key, ev in analysis.pull_evaluations.items()},
        median_pull_degree=analysis.pull_stats["degree"].median,
        median_pull_step_strength=analysis.pull_stats["step_strength"].median,
        median_pull_invstep_strength=analysis.pull_stats["invstep_strength"].median,
        assortativity=analysis.assortativity,
        assortativity_permuted_mean=float(np.mean(analysis.assortativity_permuted)),
        top_threshold=analysis.top.threshold,
        top_count=int(analysis.top.nodes.size),
        massive_central=analysis.massive_central,
        pearson=analysis.pearson,
        spearman=analysis.spearman,
        centrality_top_mean=analysis.centrality_groups.top_mean,
        centrality_all_mean=analysis.centrality_groups.all_mean,
        centrality_random_mean=analysis.centrality_groups.random_mean,
    )


def build_nk14_instance(k: int, replicate: int) -> tuple[Problem, int]:
    instance, used_seed = nk_generate_unique_optimum(14, k, mix64(ACCEPT_SEED, k, replicate))
    problem = Problem.from_nk(instance, f"accept_nk14_{k}_r{replicate:02d}")
    return problem, mix64(used_seed, 1)


@pytest.fixture(scope="session")
def nk14_corpus() -> dict[int, list[InstanceRecord]]:
    corpus: dict[int, list[InstanceRecord]] = {}
    for k, replicates in NK14_REPLICATES.items():
        records = []
        for replicate in range(replicates):
            problem, walk_seed = build_nk14_instance(k, replicate)
            analysis = analyze_instance(problem, walk_seed, permutations=30)
            records.append(record_from_analysis(analysis, k, replicate))
        corpus[k] = records
    return corpus


@pytest.fixture(scope="session")
def nk14_sample_analysis() -> InstanceAnalysis:
    """One full NK(14,2) analysis kept around for distribution checks."""
    problem, walk_seed = build_nk14_instance(2, 0)
    return analyze_instance(problem, walk_seed, permutations=30)


@pytest.fixture(scope="session")
def hiff16_analysis() -> InstanceAnalysis:
    return analyze_instance(Problem.hiff(16), walk_seed=mix64(ACCEPT_SEED, 16), permutations=30)
