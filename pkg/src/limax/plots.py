"""Figure rendering for the report stage.

Each figNN report CSV gets a PNG sibling: cell-level means with 95%
confidence bars for the scalar exhibits, double-log curves for the
distribution exhibits. Files render headless (Agg).
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .stats import summarize  # noqa: E402


def _cells(rows: list[dict]) -> list[str]:
    seen: list[str] = []
    for row in rows:
        if row["cell"] not in seen:
            seen.append(row["cell"])
    return seen


def _cell_summary(rows: list[dict], field: str, where=None) -> tuple[list[str], list[float], list[float]]:
    cells = _cells(rows)
    means, halfwidths = [], []
    for cell in cells:
        values = [
            r[field] for r in rows
            if r["cell"] == cell and (where is None or where(r))
            and r.get(field) is not None and not math.isnan(r[field])
        ]
        if values:
            s = summarize(values)
            means.append(s.mean)
            halfwidths.append(0.0 if math.isnan(s.ci95_halfwidth) else s.ci95_halfwidth)
        else:
            means.append(math.nan)
            halfwidths.append(0.0)
    return cells, means, halfwidths


def _bar_panel(ax, rows: list[dict], field: str, title: str) -> None:
    cells, means, halfwidths = _cell_summary(rows, field)
    x = range(len(cells))
    ax.bar(x, means, yerr=halfwidths, capsize=3, color="#6699cc", edgecolor="black", linewidth=0.5)
    ax.set_xticks(list(x))
    ax.set_xticklabels(cells, rotation=30, ha="right", fontsize=8)
    ax.set_title(title, fontsize=9)
    ax.grid(axis="y", alpha=0.3)


def _panel_figure(path: Path, rows: list[dict], panels: list[tuple[str, str]]) -> Path:
    fig, axes = plt.subplots(len(panels), 1, figsize=(6.4, 2.4 * len(panels)), squeeze=False)
    for ax, (field, title) in zip(axes[:, 0], panels):
        _bar_panel(ax, rows, field, title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _distribution_figure(path: Path, rows: list[dict], title: str) -> Path:
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for cell in _cells(rows):
        pts = [(r["value"], r["fraction"]) for r in rows if r["cell"] == cell]
        xs = [max(v, 1e-12) for v, _ in pts]
        ys = [f for _, f in pts]
        ax.loglog(xs, ys, marker=".", linestyle="-", linewidth=0.8, markersize=3, label=cell)
    ax.set_xlabel("value")
    ax.set_ylabel("fraction of nodes >= value")
    ax.set_title(title, fontsize=10)
    ax.legend(fontsize=7)
    ax.grid(True, which="both", alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _grouped_bars(ax, rows: list[dict], field: str, series: list[tuple[str, callable]], title: str) -> None:
    cells = _cells(rows)
    width = 0.8 / len(series)
    for i, (label, where) in enumerate(series):
        _, means, halfwidths = _cell_summary(rows, field, where=where)
        x = [j + i * width for j in range(len(cells))]
        ax.bar(x, means, width=width, yerr=halfwidths, capsize=2, label=label)
    ax.set_xticks([j + 0.4 - width / 2 for j in range(len(cells))])
    ax.set_xticklabels(cells, rotation=30, ha="right", fontsize=8)
    ax.set_title(title, fontsize=9)
    ax.legend(fontsize=7)
    ax.grid(axis="y", alpha=0.3)


def _pull_eval_figure(path: Path, rows: list[dict], title: str) -> Path:
    measures = ("degree", "step_strength", "invstep_strength")
    panels = [
        ("false_positives", "plf", "false positives (plf reference)"),
        ("false_positives", "los", "false positives (los reference)"),
        ("edit_distance", "los", "edit distance (los reference)"),
        ("rank_distance", "los", "rank distance (los reference)"),
    ]
    fig, axes = plt.subplots(2, 2, figsize=(9.6, 7.2))
    for ax, (field, reference, subtitle) in zip(axes.flat, panels):
        series = [
            (measure, lambda r, m=measure, ref=reference: r["measure"] == m and r["reference"] == ref)
            for measure in measures
        ]
        _grouped_bars(ax, rows, field, series, subtitle)
    fig.suptitle(title, fontsize=11)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_all(figdir: Path, *, fig01, fig02, fig03, fig04, fig05, distributions,
               fig10, fig11, fig12, fig13, fig14, fig15) -> list[Path]:
    written = []
    written.append(_panel_figure(figdir / "fig01_walklen.png", fig01, [
        ("wlen_mean", "mean walk length"),
        ("wdist_mean", "mean walk distance"),
        ("cr1_mean", "mean compression ratio (steps)"),
    ]))
    written.append(_panel_figure(figdir / "fig02_stepvar.png", fig02, [
        ("wvar_mean", "mean step-size variability"),
        ("mean_step_size", "mean step size"),
        ("step_range_mean", "mean step-size range"),
    ]))
    written.append(_panel_figure(figdir / "fig03_adaptive.png", fig03,
                                 [("max_adaptive_length", "longest same-size step run")]))
    written.append(_panel_figure(figdir / "fig04_whier.png", fig04,
                                 [("whier", "fraction of hierarchical walks")]))
    written.append(_panel_figure(figdir / "fig05_edges_sources.png", fig05, [
        ("unique_edges", "distinct edges"),
        ("source_count", "source nodes"),
    ]))
    titles = {
        "fig06_degree_dist": "reversed cumulative degree distribution",
        "fig07_step_strength_dist": "reversed cumulative step-strength distribution",
        "fig08_invstep_strength_dist": "reversed cumulative invstep-strength distribution",
    }
    for name, rows in distributions.items():
        if rows:
            written.append(_distribution_figure(figdir / f"{name}.png", rows, titles[name]))
    if fig10:
        written.append(_pull_eval_figure(figdir / "fig10_pull_eval_n14.png", fig10,
                                         "pull-measure evaluation (n = 14)"))
    if fig11:
        written.append(_pull_eval_figure(figdir / "fig11_pull_eval_n16.png", fig11,
                                         "pull-measure evaluation (n = 16)"))

    fig, axes = plt.subplots(2, 1, figsize=(7.2, 6.0))
    for ax, stat in zip(axes, ("mean", "median")):
        cells = _cells(fig12)
        width = 0.25
        for i, group in enumerate(("top", "all", "random")):
            _, means, halfwidths = _cell_summary(fig12, f"centrality_{group}_{stat}")
            x = [j + i * width for j in range(len(cells))]
            ax.bar(x, means, width=width, yerr=halfwidths, capsize=2, label=group)
        ax.set_xticks([j + width for j in range(len(cells))])
        ax.set_xticklabels(cells, rotation=30, ha="right", fontsize=8)
        ax.set_title(f"{stat} walk centrality by node group", fontsize=9)
        ax.legend(fontsize=7)
        ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(figdir / "fig12_centrality_groups.png", dpi=150)
    plt.close(fig)
    written.append(figdir / "fig12_centrality_groups.png")

    written.append(_panel_figure(figdir / "fig13_correlation.png", fig13, [
        ("pearson", "viscosity-centrality Pearson r"),
        ("spearman", "viscosity-centrality Spearman rho"),
    ]))
    written.append(_panel_figure(figdir / "fig14_assortativity.png", fig14, [
        ("assortativity", "viscosity assortativity (actual)"),
        ("assortativity_permuted_mean", "viscosity assortativity (permuted)"),
        ("double_single_ratio", "double-to-single edge ratio"),
    ]))
    written.append(_panel_figure(figdir / "fig15_massive_central.png", fig15, [
        ("massive_central", "mean pairwise Hamming distance of high-viscosity nodes"),
    ]))
    return written
