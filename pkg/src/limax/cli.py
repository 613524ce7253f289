"""Command-line experiment driver.

Stages write their artifacts under one output directory and later stages
consume the files, so each stage can be rerun independently:

    limax gen      instance files + manifest
    limax walk     full walk enumeration per instance + walk statistics
    limax net      edge list, node aggregates, network counts
    limax localopt local-optimum scores and pull-measure evaluation
    limax metrics  centrality, correlation, assortativity, clustering
    limax report   exhibit-keyed CSVs and figures

Identical configuration reproduces byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import artifacts
from .landscapes import (
    KIND_HIFF,
    KIND_NK,
    KIND_ONEMAX,
    Problem,
    load_problem,
    nk_generate_unique_optimum,
    save_problem,
)
from .localopt import (
    MEASURES,
    REFERENCES,
    LocalOptimaCounts,
    evaluate_pull_measure,
    los_table,
    plf_table,
)
from .network import NodeStatsTable, build_network, network_counts, save_edges_csv, save_graphml, save_node_stats_csv
from .pipeline import DEFAULT_PERMUTATIONS, analyze_instance
from .reports import MissingStageError, generate_reports, require
from .rng import mix64
from .walker import LimaxWalker, load_walkset, save_walkset
from .walkstats import aggregate_walkset

DEFAULT_GRID = "nk:14:2,nk:14:6,nk:14:10,nk:16:4,nk:16:8,nk:16:12,onemax:14,hiff:16"
QUICK_GRID = "nk:14:2,nk:14:6,nk:14:10,onemax:14,hiff:16"
_KIND_CODES = {KIND_NK: 1, KIND_ONEMAX: 2, KIND_HIFF: 3}


def parse_grid(text: str) -> list[tuple[str, int, int | None]]:
    """Parse 'nk:14:2,onemax:14,hiff:16' into (kind, n, k) cells."""
    cells = []
    for token in text.split(","):
        parts = token.strip().lower().split(":")
        if not parts or not parts[0]:
            raise ValueError(f"empty grid cell in {text!r}")
        kind = {"nk": KIND_NK, "onemax": KIND_ONEMAX, "hiff": KIND_HIFF, "hiff_c": KIND_HIFF}.get(parts[0])
        if kind is None:
            raise ValueError(f"unknown problem kind {parts[0]!r} (expected nk, onemax or hiff)")
        if kind == KIND_NK:
            if len(parts) != 3:
                raise ValueError(f"nk cells need n and k, got {token!r}")
            cells.append((kind, int(parts[1]), int(parts[2])))
        else:
            if len(parts) != 2:
                raise ValueError(f"{parts[0]} cells need n only, got {token!r}")
            cells.append((kind, int(parts[1]), None))
    return cells


def cell_label(kind: str, n: int, k: int | None) -> str:
    return f"nk_{n}_{k}" if kind == KIND_NK else f"{kind}_{n}"


def manifest_path(out: Path) -> Path:
    return out / "manifest.json"


def load_manifest(out: Path) -> dict:
    path = require(manifest_path(out), "gen")
    return json.loads(path.read_text(encoding="utf-8"))


def cmd_gen(args) -> int:
    out = Path(args.out)
    grid_spec = QUICK_GRID if args.quick else args.grid
    instances_per_cell = 10 if args.quick and args.instances is None else (args.instances or 30)
    cells = parse_grid(grid_spec)
    (out / "instances").mkdir(parents=True, exist_ok=True)
    entries = []
    for kind, n, k in cells:
        for replicate in range(instances_per_cell):
            label = cell_label(kind, n, k)
            identifier = f"{label}_r{replicate:02d}"
            seed = mix64(args.seed, _KIND_CODES[kind], n, -1 if k is None else k, replicate)
            if kind == KIND_NK:
                instance, used_seed = nk_generate_unique_optimum(n, k, seed)
                problem = Problem.from_nk(instance, identifier)
                instance_seed = used_seed
            else:
                problem = (Problem.onemax(n, identifier) if kind == KIND_ONEMAX
                           else Problem.hiff(n, identifier))
                instance_seed = seed
            path = out / "instances" / f"{identifier}.json"
            save_problem(problem, path)
            entries.append({
                "identifier": identifier,
                "cell": label,
                "kind": kind,
                "n": n,
                "k": k,
                "replicate": replicate,
                "instance_seed": instance_seed,
                "walk_seed": mix64(instance_seed, 1),
                "file": str(path.relative_to(out)),
            })
    manifest = {
        "master_seed": args.seed,
        "grid": grid_spec,
        "instances_per_cell": instances_per_cell,
        "max_step": args.max_step,
        "instances": entries,
    }
    manifest_path(out).write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    print(f"gen: wrote {len(entries)} instance files under {out / 'instances'}")
    return 0


def _meta_base(meta: dict) -> dict:
    return {
        "identifier": meta["identifier"], "cell": meta["cell"], "kind": meta["kind"],
        "n": meta["n"], "k": meta["k"], "replicate": meta["replicate"],
    }


_META_FIELDS = ["identifier", "cell", "kind", "n", "k", "replicate"]


def cmd_walk(args) -> int:
    out = Path(args.out)
    manifest = load_manifest(out)
    max_step = args.max_step if args.max_step is not None else manifest.get("max_step")
    (out / "walks").mkdir(exist_ok=True)
    (out / "walkstats").mkdir(exist_ok=True)
    for meta in manifest["instances"]:
        walks_path = out / "walks" / f"{meta['identifier']}.csv"
        stats_path = out / "walkstats" / f"{meta['identifier']}.csv"
        if args.skip_existing and walks_path.exists() and stats_path.exists():
            continue
        problem = load_problem(require(out / meta["file"], "gen"))
        walkset = LimaxWalker(problem).run_all(meta["walk_seed"], max_step)
        save_walkset(walkset, walks_path)
        row = artifacts.walkstats_row(_meta_base(meta), walkset, aggregate_walkset(walkset))
        artifacts.write_rows(stats_path, artifacts.walkstats_fields(_META_FIELDS), [row])
        print(f"walk: {meta['identifier']} moves={walkset.total_moves()}")
    return 0


def cmd_net(args) -> int:
    out = Path(args.out)
    manifest = load_manifest(out)
    (out / "network").mkdir(exist_ok=True)
    for meta in manifest["instances"]:
        walkset = load_walkset(require(out / "walks" / f"{meta['identifier']}.csv", "walk"))
        net = build_network(walkset)
        stats = NodeStatsTable(net)
        counts = network_counts(net, stats)
        save_edges_csv(net, out / "network" / f"{meta['identifier']}.edges.csv")
        save_node_stats_csv(stats, out / "network" / f"{meta['identifier']}.nodes.csv")
        artifacts.write_rows(
            out / "network" / f"{meta['identifier']}.counts.csv",
            _META_FIELDS + artifacts.COUNTS_FIELDS,
            [artifacts.counts_row(_meta_base(meta), counts, net.total_moves)],
        )
        if args.graphml:
            save_graphml(net, out / "network" / f"{meta['identifier']}.graphml")
        print(f"net: {meta['identifier']} edges={counts.unique_edges} sources={counts.source_count}")
    return 0


def cmd_localopt(args) -> int:
    out = Path(args.out)
    manifest = load_manifest(out)
    (out / "localopt").mkdir(exist_ok=True)
    for meta in manifest["instances"]:
        problem = load_problem(require(out / meta["file"], "gen"))
        node_stats = artifacts.load_node_stats(
            require(out / "network" / f"{meta['identifier']}.nodes.csv", "net"), problem.n)
        plf_values = plf_table(problem)
        los_values = los_table(node_stats)
        optima = problem.global_optima()
        artifacts.save_localopt_nodes(node_stats, plf_values,
                                      out / "localopt" / f"{meta['identifier']}.nodes.csv")
        plf_count = int(np.count_nonzero(plf_values == 1.0))
        los_count = int(np.count_nonzero(los_values > 0))
        overlap = float(plf_values[los_values > 0].mean()) if los_count else float("nan")
        counts = LocalOptimaCounts(
            plf_count=plf_count, los_count=los_count,
            mean_plf_of_los_positive=overlap, difference=plf_count - los_count,
        )
        artifacts.write_rows(out / "localopt" / f"{meta['identifier']}.counts.csv",
                             _META_FIELDS + artifacts.LOCALOPT_COUNT_FIELDS,
                             [artifacts.localopt_counts_row(_meta_base(meta), counts)])
        evaluations = {
            (measure, reference): evaluate_pull_measure(
                node_stats, plf_values, los_values, optima, measure, reference)
            for measure in MEASURES for reference in REFERENCES
        }
        artifacts.write_rows(out / "localopt" / f"{meta['identifier']}.pulleval.csv",
                             _META_FIELDS + artifacts.PULLEVAL_FIELDS,
                             artifacts.pulleval_rows(_meta_base(meta), evaluations))
        print(f"localopt: {meta['identifier']} plf={plf_count} los={los_count}")
    return 0


def cmd_metrics(args) -> int:
    out = Path(args.out)
    manifest = load_manifest(out)
    (out / "metrics").mkdir(exist_ok=True)
    for meta in manifest["instances"]:
        problem = load_problem(require(out / meta["file"], "gen"))
        walkset = load_walkset(require(out / "walks" / f"{meta['identifier']}.csv", "walk"))
        analysis = analyze_instance(
            problem, meta["walk_seed"], max_step=manifest.get("max_step"),
            permutations=args.permutations, walkset=walkset,
        )
        artifacts.write_rows(out / "metrics" / f"{meta['identifier']}.csv",
                             _META_FIELDS + artifacts.METRICS_FIELDS,
                             [artifacts.metrics_row(_meta_base(meta), analysis)])
        print(f"metrics: {meta['identifier']} assortativity={analysis.assortativity:+.4f} "
              f"spearman={analysis.spearman:.4f}")
    return 0


def cmd_report(args) -> int:
    out = Path(args.out)
    manifest = load_manifest(out)
    written = generate_reports(out, manifest, figures=not args.no_figures)
    print(f"report: wrote {len(written)} files under {out / 'reports'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="limax",
        description="Slow self-avoiding adaptive walk experiments over NK / OneMax / HIFF landscapes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate problem instance files and the run manifest")
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--grid", default=DEFAULT_GRID,
                     help="comma-separated cells, e.g. nk:14:2,onemax:14,hiff:16")
    gen.add_argument("--instances", type=int, default=None,
                     help="replicates per cell (default 30; 10 with --quick)")
    gen.add_argument("--seed", type=int, default=2024, help="master seed")
    gen.add_argument("--max-step", type=int, default=None,
                     help="walk step-size cap recorded in the manifest")
    gen.add_argument("--quick", action="store_true",
                     help="small profile: n=14 cells, 10 replicates")
    gen.set_defaults(func=cmd_gen)

    walk = sub.add_parser("walk", help="run the full walk enumeration for every instance")
    walk.add_argument("--out", required=True)
    walk.add_argument("--max-step", type=int, default=None, help="override the manifest step cap")
    walk.add_argument("--skip-existing", action="store_true")
    walk.set_defaults(func=cmd_walk)

    net = sub.add_parser("net", help="build walk networks and node aggregates")
    net.add_argument("--out", required=True)
    net.add_argument("--graphml", action="store_true", help="also export GraphML")
    net.set_defaults(func=cmd_net)

    lo = sub.add_parser("localopt", help="local-optimum scores and pull-measure evaluation")
    lo.add_argument("--out", required=True)
    lo.set_defaults(func=cmd_localopt)

    metrics = sub.add_parser("metrics", help="centrality, correlation, assortativity, clustering")
    metrics.add_argument("--out", required=True)
    metrics.add_argument("--permutations", type=int, default=DEFAULT_PERMUTATIONS)
    metrics.set_defaults(func=cmd_metrics)

    report = sub.add_parser("report", help="write exhibit CSVs and figures")
    report.add_argument("--out", required=True)
    report.add_argument("--no-figures", action="store_true", help="CSV output only")
    report.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MissingStageError as err:
        print(f"error [{args.command}]: {err}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as err:
        print(f"error [{args.command}]: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
