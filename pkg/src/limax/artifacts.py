"""Per-instance artifact rows and their CSV round-trips.

Every pipeline stage persists its results as small CSV files with stable
headers; later stages and the report generator consume those files rather
than in-memory state, so any stage can be rerun or inspected in isolation.
Floats are written with repr() for exact round-trips.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .localopt import MEASURES, LocalOptimaCounts, PullEvaluation, los_table, pull_value_table
from .network import NetworkCounts, NodeStatsTable
from .pipeline import InstanceAnalysis
from .stats import Summary
from .walker import WalkSet
from .walkstats import WalkSetSummary

WALKSTATS_SUMMARY_FIELDS = (
    "wlen", "cwlen", "wdist", "cwdist", "cr1", "cr2", "wvar", "step_range", "adaptive_length",
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_rows(path: str | Path, fieldnames: list[str], rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([_fmt(row.get(name)) for name in fieldnames])


def read_rows(path: str | Path) -> list[dict[str, str]]:
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def _summary_cells(prefix: str, s: Summary | None) -> dict:
    if s is None:
        return {f"{prefix}_mean": None, f"{prefix}_std": None, f"{prefix}_median": None}
    return {f"{prefix}_mean": s.mean, f"{prefix}_std": s.std, f"{prefix}_median": s.median}


def walkstats_row(meta: dict, walkset: WalkSet, summary: WalkSetSummary) -> dict:
    row = dict(meta)
    row.update(
        walk_count=summary.walk_count,
        total_moves=summary.total_moves,
        visited_rejections=walkset.visited_rejections,
        mean_step_size=summary.mean_step_size,
        whier=summary.whier,
        hierarchical_count=summary.hierarchical_count,
        max_adaptive_length=summary.max_adaptive_length,
    )
    for name in WALKSTATS_SUMMARY_FIELDS:
        row.update(_summary_cells(name, getattr(summary, name)))
    return row


def walkstats_fields(meta_fields: list[str]) -> list[str]:
    fields = meta_fields + [
        "walk_count", "total_moves", "visited_rejections",
        "mean_step_size", "whier", "hierarchical_count", "max_adaptive_length",
    ]
    for name in WALKSTATS_SUMMARY_FIELDS:
        fields += [f"{name}_mean", f"{name}_std", f"{name}_median"]
    return fields


def counts_row(meta: dict, counts: NetworkCounts, total_moves: int) -> dict:
    row = dict(meta)
    row.update(
        unique_edges=counts.unique_edges,
        source_count=counts.source_count,
        sink_count=counts.sink_count,
        component_count=counts.component_count,
        total_moves=total_moves,
    )
    return row


COUNTS_FIELDS = ["unique_edges", "source_count", "sink_count", "component_count", "total_moves"]


def localopt_counts_row(meta: dict, counts: LocalOptimaCounts) -> dict:
    row = dict(meta)
    row.update(
        plf_count=counts.plf_count,
        los_count=counts.los_count,
        mean_plf_of_los_positive=counts.mean_plf_of_los_positive,
        difference=counts.difference,
    )
    return row


LOCALOPT_COUNT_FIELDS = ["plf_count", "los_count", "mean_plf_of_los_positive", "difference"]


def pulleval_rows(meta: dict, evaluations: dict[tuple[str, str], PullEvaluation]) -> list[dict]:
    rows = []
    for (measure, reference), ev in sorted(evaluations.items()):
        row = dict(meta)
        row.update(
            measure=measure,
            reference=reference,
            false_positives=ev.false_positives,
            error_rate=ev.error_rate,
            edit_distance=ev.edit_distance,
            rank_distance=ev.rank_distance,
            evaluated_nodes=ev.evaluated_nodes,
            degenerate=ev.degenerate,
        )
        rows.append(row)
    return rows


PULLEVAL_FIELDS = [
    "measure", "reference", "false_positives", "error_rate",
    "edit_distance", "rank_distance", "evaluated_nodes", "degenerate",
]


def save_localopt_nodes(stats: NodeStatsTable, plf_values: np.ndarray, path: str | Path) -> None:
    los_values = los_table(stats)
    pulls = {m: pull_value_table(stats, m) for m in MEASURES}
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node", "plf", "los", "pull_degree", "pull_step_strength", "pull_invstep_strength"])
        for node in range(len(stats)):
            writer.writerow([
                node,
                repr(float(plf_values[node])),
                repr(float(los_values[node])),
                repr(float(pulls["degree"][node])),
                repr(float(pulls["step_strength"][node])),
                repr(float(pulls["invstep_strength"][node])),
            ])


def metrics_row(meta: dict, analysis: InstanceAnalysis) -> dict:
    groups = analysis.centrality_groups
    permuted = analysis.assortativity_permuted
    row = dict(meta)
    row.update(
        assortativity=analysis.assortativity,
        assortativity_permuted_mean=float(np.mean(permuted)) if permuted else math.nan,
        permutations=len(permuted),
        double_fraction=analysis.mixing.double_fraction,
        single_fraction=analysis.mixing.single_fraction,
        double_single_ratio=analysis.mixing.ratio,
        double_count=analysis.double_edge_count,
        single_count=analysis.single_edge_count,
        top_threshold=analysis.top.threshold,
        top_count=int(analysis.top.nodes.size),
        pool_size=int(analysis.pool.size),
        massive_top_fraction=analysis.massive_top_fraction,
        massive_threshold=analysis.massive_threshold,
        massive_node_count=analysis.massive_node_count,
        massive_central=analysis.massive_central,
        pearson=analysis.pearson,
        spearman=analysis.spearman,
        centrality_top_mean=groups.top_mean,
        centrality_top_median=groups.top_median,
        centrality_top_std=groups.top_std,
        centrality_all_mean=groups.all_mean,
        centrality_all_median=groups.all_median,
        centrality_all_std=groups.all_std,
        centrality_random_mean=groups.random_mean,
        centrality_random_median=groups.random_median,
        centrality_random_std=groups.random_std,
    )
    for measure in MEASURES:
        ms = analysis.pull_stats[measure]
        row[f"pull_{measure}_median"] = ms.median
        row[f"pull_{measure}_mean"] = ms.mean
        row[f"pull_{measure}_std"] = ms.std
    return row


METRICS_FIELDS = [
    "assortativity", "assortativity_permuted_mean", "permutations",
    "double_fraction", "single_fraction", "double_single_ratio", "double_count", "single_count",
    "top_threshold", "top_count", "pool_size",
    "massive_top_fraction", "massive_threshold", "massive_node_count", "massive_central",
    "pearson", "spearman",
    "centrality_top_mean", "centrality_top_median", "centrality_top_std",
    "centrality_all_mean", "centrality_all_median", "centrality_all_std",
    "centrality_random_mean", "centrality_random_median", "centrality_random_std",
] + [f"pull_{m}_{s}" for m in MEASURES for s in ("median", "mean", "std")]


def load_node_stats(path: str | Path, n: int) -> NodeStatsTable:
    """Rebuild a NodeStatsTable from its exported CSV (exact floats)."""
    rows = read_rows(path)
    if len(rows) != 1 << n:
        raise ValueError(f"{path}: expected {1 << n} node rows, found {len(rows)}")
    table = NodeStatsTable.__new__(NodeStatsTable)
    table.n = n
    int_fields = {"in_degree", "out_degree", "in_max", "in_mode", "out_min", "out_mode"}
    bool_fields = {"is_source", "is_sink"}
    for name in NodeStatsTable.FIELDS:
        if name in int_fields:
            column = np.array([int(r[name]) for r in rows], dtype=np.int64)
        elif name in bool_fields:
            column = np.array([r[name] == "1" for r in rows], dtype=bool)
        else:
            column = np.array([float(r[name]) for r in rows], dtype=np.float64)
        setattr(table, name, column)
    return table
