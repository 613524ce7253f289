"""Exhibit-keyed report CSVs assembled from per-instance artifacts.

Each report file carries instance-level rows followed by summary rows
(mean / std / median / ci95_halfwidth over the instances, computed by
:func:`limax.stats.summarize`). Distribution exhibits (fig06-fig08) list raw
(value, fraction) pairs for one sampled network per cell and carry no
summary rows.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from .artifacts import read_rows, write_rows
from .localopt import MEASURES
from .network import reversed_cumulative_distribution
from .rng import SplitMix64, mix64
from .stats import paired_t_pvalue, summarize

SUMMARY_STATS = ("mean", "std", "median", "ci95_halfwidth")


class MissingStageError(RuntimeError):
    """An upstream pipeline stage has not produced its artifact yet."""

    def __init__(self, stage: str, path: Path):
        super().__init__(f"missing artifact {path}: run 'limax {stage}' first")
        self.stage = stage
        self.path = path


def require(path: Path, stage: str) -> Path:
    if not path.exists():
        raise MissingStageError(stage, path)
    return path


def _num(text: str | None) -> float | None:
    if text is None or text == "":
        return None
    return float(text)


def write_exhibit(
    path: Path,
    group_fields: list[str],
    value_fields: list[str],
    rows: list[dict],
    summaries: bool = True,
) -> None:
    """Write instance rows grouped by key, each group followed by its
    summary rows (instance column set to the statistic name)."""
    fieldnames = group_fields + ["instance"] + value_fields
    grouped: dict[tuple, list[dict]] = {}
    order: list[tuple] = []
    for row in rows:
        key = tuple(row[g] for g in group_fields)
        if key not in grouped:
            grouped[key] = []
            order.append(key)
        grouped[key].append(row)
    out: list[dict] = []
    for key in order:
        group = grouped[key]
        out.extend(group)
        if not summaries:
            continue
        for stat in SUMMARY_STATS:
            srow = dict(zip(group_fields, key))
            srow["instance"] = stat
            for field in value_fields:
                values = [
                    row[field] for row in group
                    if row.get(field) is not None and not (
                        isinstance(row[field], float) and math.isnan(row[field])
                    )
                ]
                srow[field] = getattr(summarize(values), stat) if values else None
            out.append(srow)
    write_rows(path, fieldnames, out)


def read_exhibit(path: Path) -> tuple[list[dict], list[dict]]:
    """Split an exhibit CSV back into (instance rows, summary rows)."""
    rows = read_rows(path)
    instance_rows = [r for r in rows if r["instance"] not in SUMMARY_STATS]
    summary_rows = [r for r in rows if r["instance"] in SUMMARY_STATS]
    return instance_rows, summary_rows


def _join(meta: dict, artifact_row: dict, fields: Sequence[str]) -> dict:
    row = {"cell": meta["cell"], "instance": meta["identifier"]}
    for field in fields:
        row[field] = _num(artifact_row.get(field))
    return row


def _single_row(path: Path, stage: str) -> dict:
    rows = read_rows(require(path, stage))
    if len(rows) != 1:
        raise ValueError(f"{path}: expected one data row, found {len(rows)}")
    return rows[0]


def generate_reports(out: Path, manifest: dict, figures: bool = True) -> list[Path]:
    """Build every report CSV (and figure when requested) under out/reports."""
    instances = manifest["instances"]
    reports = out / "reports"
    reports.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    walk_rows = {m["identifier"]: _single_row(out / "walkstats" / f"{m['identifier']}.csv", "walk")
                 for m in instances}
    count_rows = {m["identifier"]: _single_row(out / "network" / f"{m['identifier']}.counts.csv", "net")
                  for m in instances}
    lo_rows = {m["identifier"]: _single_row(out / "localopt" / f"{m['identifier']}.counts.csv", "localopt")
               for m in instances}
    pe_rows = {m["identifier"]: read_rows(require(out / "localopt" / f"{m['identifier']}.pulleval.csv", "localopt"))
               for m in instances}
    metric_rows = {m["identifier"]: _single_row(out / "metrics" / f"{m['identifier']}.csv", "metrics")
                   for m in instances}

    def exhibit(name: str, group_fields: list[str], value_fields: list[str],
                rows: list[dict], summaries: bool = True) -> list[dict]:
        path = reports / f"{name}.csv"
        write_exhibit(path, group_fields, value_fields, rows, summaries=summaries)
        written.append(path)
        return rows

    fig01 = exhibit(
        "fig01_walklen", ["cell"], ["wlen_mean", "wdist_mean", "cr1_mean", "cr2_mean"],
        [_join(m, walk_rows[m["identifier"]], ["wlen_mean", "wdist_mean", "cr1_mean", "cr2_mean"])
         for m in instances],
    )
    fig02 = exhibit(
        "fig02_stepvar", ["cell"], ["wvar_mean", "mean_step_size", "step_range_mean"],
        [_join(m, walk_rows[m["identifier"]], ["wvar_mean", "mean_step_size", "step_range_mean"])
         for m in instances],
    )
    fig03 = exhibit(
        "fig03_adaptive", ["cell"], ["max_adaptive_length"],
        [_join(m, walk_rows[m["identifier"]], ["max_adaptive_length"]) for m in instances],
    )
    fig04 = exhibit(
        "fig04_whier", ["cell"], ["whier"],
        [_join(m, walk_rows[m["identifier"]], ["whier"]) for m in instances],
    )
    fig05 = exhibit(
        "fig05_edges_sources", ["cell"], ["unique_edges", "source_count"],
        [_join(m, count_rows[m["identifier"]], ["unique_edges", "source_count"]) for m in instances],
    )

    dist_rows = _distribution_rows(out, manifest)
    for name, rows in dist_rows.items():
        exhibit(name, ["cell"], ["value", "fraction"], rows, summaries=False)

    pull_eval_rows = []
    for m in instances:
        for row in pe_rows[m["identifier"]]:
            pull_eval_rows.append({
                "cell": m["cell"], "instance": m["identifier"],
                "kind": m["kind"], "n": int(m["n"]),
                "measure": row["measure"], "reference": row["reference"],
                "false_positives": _num(row["false_positives"]),
                "error_rate": _num(row["error_rate"]),
                "edit_distance": _num(row["edit_distance"]),
                "rank_distance": _num(row["rank_distance"]),
            })
    eval_fields = ["false_positives", "error_rate", "edit_distance", "rank_distance"]
    fig10 = exhibit("fig10_pull_eval_n14", ["cell", "measure", "reference"], eval_fields,
                    [r for r in pull_eval_rows if r["kind"] == "nk" and r["n"] == 14])
    fig11 = exhibit("fig11_pull_eval_n16", ["cell", "measure", "reference"], eval_fields,
                    [r for r in pull_eval_rows if r["kind"] == "nk" and r["n"] == 16])

    centrality_fields = [
        "centrality_top_mean", "centrality_top_median", "centrality_top_std",
        "centrality_all_mean", "centrality_all_median", "centrality_all_std",
        "centrality_random_mean", "centrality_random_median", "centrality_random_std",
    ]
    fig12 = exhibit(
        "fig12_centrality_groups", ["cell"], centrality_fields,
        [_join(m, metric_rows[m["identifier"]], centrality_fields) for m in instances],
    )
    fig13 = exhibit(
        "fig13_correlation", ["cell"], ["pearson", "spearman"],
        [_join(m, metric_rows[m["identifier"]], ["pearson", "spearman"]) for m in instances],
    )
    _write_spearman_ttest(reports / "fig13_spearman_ttest.csv", instances, metric_rows)
    written.append(reports / "fig13_spearman_ttest.csv")

    mixing_fields = ["assortativity", "assortativity_permuted_mean",
                     "double_fraction", "single_fraction", "double_single_ratio"]
    fig14 = exhibit(
        "fig14_assortativity", ["cell"], mixing_fields,
        [_join(m, metric_rows[m["identifier"]], mixing_fields) for m in instances],
    )
    fig15 = exhibit(
        "fig15_massive_central", ["cell"],
        ["massive_central", "massive_top_fraction", "massive_threshold", "massive_node_count"],
        [_join(m, metric_rows[m["identifier"]],
               ["massive_central", "massive_top_fraction", "massive_threshold", "massive_node_count"])
         for m in instances],
    )

    tab01_rows = _degree_strength_rows(out, manifest)
    exhibit("tab01_degree_strength", ["cell", "quantity"], ["mean", "std", "median"], tab01_rows)
    exhibit(
        "tab02_local_optima", ["cell"],
        ["plf_count", "los_count", "mean_plf_of_los_positive", "difference"],
        [_join(m, lo_rows[m["identifier"]],
               ["plf_count", "los_count", "mean_plf_of_los_positive", "difference"])
         for m in instances],
    )
    pull_median_fields = [f"pull_{m}_{s}" for m in MEASURES for s in ("median", "mean", "std")]
    exhibit(
        "tab05_pull_medians", ["cell"], pull_median_fields,
        [_join(m, metric_rows[m["identifier"]], pull_median_fields) for m in instances],
    )
    zero_rows = []
    for row in pull_eval_rows:
        zero_rows.append({
            "cell": row["cell"], "instance": row["instance"],
            "measure": row["measure"], "reference": row["reference"],
            "zero_error": 1.0 if row["error_rate"] == 0 else 0.0,
        })
    exhibit("tab06a_zero_error", ["cell", "measure", "reference"], ["zero_error"], zero_rows)
    zero_edit_rows = [
        {
            "cell": row["cell"], "instance": row["instance"], "measure": row["measure"],
            "zero_edit": 1.0 if row["edit_distance"] == 0 else 0.0,
        }
        for row in pull_eval_rows if row["reference"] == "los"
    ]
    exhibit("tab06b_zero_edit", ["cell", "measure"], ["zero_edit"], zero_edit_rows)
    exhibit(
        "tab07_top_nodes", ["cell"], ["top_threshold", "top_count", "double_count"],
        [_join(m, metric_rows[m["identifier"]], ["top_threshold", "top_count", "double_count"])
         for m in instances],
    )
    exhibit("tab08_centrality", ["cell"], centrality_fields,
            [_join(m, metric_rows[m["identifier"]], centrality_fields) for m in instances])

    if figures:
        from . import plots

        figdir = reports / "figures"
        figdir.mkdir(exist_ok=True)
        written += plots.render_all(
            figdir,
            fig01=fig01, fig02=fig02, fig03=fig03, fig04=fig04, fig05=fig05,
            distributions=dist_rows, fig10=fig10, fig11=fig11,
            fig12=fig12, fig13=fig13, fig14=fig14, fig15=fig15,
        )
    return written


def _sample_instances(manifest: dict, per_cell: int, tag: int) -> dict[str, list[dict]]:
    """Seeded choice of a few instances per cell (for the exhibits the
    source material computes on sampled networks)."""
    by_cell: dict[str, list[dict]] = {}
    for m in manifest["instances"]:
        by_cell.setdefault(m["cell"], []).append(m)
    rng = SplitMix64(mix64(int(manifest["master_seed"]), tag))
    picked = {}
    for cell, group in by_cell.items():
        chosen = rng.sample(range(len(group)), min(per_cell, len(group)))
        picked[cell] = [group[i] for i in sorted(chosen)]
    return picked


def _load_node_columns(out: Path, identifier: str) -> dict[str, np.ndarray]:
    rows = read_rows(require(out / "network" / f"{identifier}.nodes.csv", "net"))
    fields = ("in_degree", "out_degree", "in_step_strength", "out_step_strength",
              "in_invstep_strength", "out_invstep_strength")
    return {f: np.array([float(r[f]) for r in rows]) for f in fields}


def _distribution_rows(out: Path, manifest: dict) -> dict[str, list[dict]]:
    picked = _sample_instances(manifest, per_cell=1, tag=0xD157)
    names = {
        "fig06_degree_dist": ("in_degree", "out_degree"),
        "fig07_step_strength_dist": ("in_step_strength", "out_step_strength"),
        "fig08_invstep_strength_dist": ("in_invstep_strength", "out_invstep_strength"),
    }
    result: dict[str, list[dict]] = {name: [] for name in names}
    for cell, metas in picked.items():
        meta = metas[0]
        cols = _load_node_columns(out, meta["identifier"])
        for name, (in_field, out_field) in names.items():
            totals = cols[in_field] + cols[out_field]
            for value, fraction in reversed_cumulative_distribution(totals):
                result[name].append({
                    "cell": cell, "instance": meta["identifier"],
                    "value": value, "fraction": fraction,
                })
    return result


def _degree_strength_rows(out: Path, manifest: dict) -> list[dict]:
    picked = _sample_instances(manifest, per_cell=2, tag=0x7AB1)
    quantities = [
        ("in_degree", lambda c: c["in_degree"]),
        ("out_degree", lambda c: c["out_degree"]),
        ("degree", lambda c: c["in_degree"] + c["out_degree"]),
        ("in_step_strength", lambda c: c["in_step_strength"]),
        ("out_step_strength", lambda c: c["out_step_strength"]),
        ("step_strength", lambda c: c["in_step_strength"] + c["out_step_strength"]),
        ("in_invstep_strength", lambda c: c["in_invstep_strength"]),
        ("out_invstep_strength", lambda c: c["out_invstep_strength"]),
        ("invstep_strength", lambda c: c["in_invstep_strength"] + c["out_invstep_strength"]),
    ]
    rows = []
    for cell, metas in picked.items():
        for meta in metas:
            cols = _load_node_columns(out, meta["identifier"])
            for quantity, pick in quantities:
                values = pick(cols)
                rows.append({
                    "cell": cell, "instance": meta["identifier"], "quantity": quantity,
                    "mean": float(values.mean()),
                    "std": float(values.std(ddof=1)),
                    "median": float(np.median(values)),
                })
    return rows


def _write_spearman_ttest(path: Path, instances: list[dict], metric_rows: dict) -> None:
    """Paired t-test of per-replicate Spearman rho between adjacent-K NK
    cells with matching n (pairs matched by replicate index)."""
    by_cell: dict[str, list[tuple[int, float]]] = {}
    cell_nk: dict[str, tuple[int, int]] = {}
    for m in instances:
        if m["kind"] != "nk":
            continue
        rho = _num(metric_rows[m["identifier"]].get("spearman"))
        if rho is None:
            continue
        by_cell.setdefault(m["cell"], []).append((int(m["replicate"]), rho))
        cell_nk[m["cell"]] = (int(m["n"]), int(m["k"]))
    rows = []
    cells = sorted(cell_nk, key=lambda c: cell_nk[c])
    for a, b in zip(cells, cells[1:]):
        if cell_nk[a][0] != cell_nk[b][0]:
            continue
        sa = [r for _, r in sorted(by_cell[a])]
        sb = [r for _, r in sorted(by_cell[b])]
        if len(sa) != len(sb) or len(sa) < 2:
            continue
        rows.append({
            "n": cell_nk[a][0], "k_low": cell_nk[a][1], "k_high": cell_nk[b][1],
            "spearman_low_mean": float(np.mean(sa)), "spearman_high_mean": float(np.mean(sb)),
            "paired_t_pvalue": paired_t_pvalue(sa, sb),
        })
    write_rows(path, ["n", "k_low", "k_high", "spearman_low_mean", "spearman_high_mean",
                      "paired_t_pvalue"], rows)
