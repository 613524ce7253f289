"""The walk network: a directed weighted multigraph over genotypes.

Every move x -> y in any walk contributes one traversal of the edge (x, y);
the edge weight is the step size, which always equals hamming(x, y), so only
the traversal multiplicity is stored per distinct pair. Node degrees and
strengths count traversals (each walk move counts once); the distinct-edge
view is used where an edge-as-pair notion is wanted (edge counts, mixing,
assortativity).

Node viscosity (in-invstep-strength / out-invstep-strength, or the raw
in-value for nodes with no outgoing edges) scores how strongly a node pulls
walks in and holds them, and is this package's local-optimum-potential
measure.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .bits import popcount_array
from .walker import WalkSet


class NetworkCorruptionError(ValueError):
    """A recorded move's step size disagrees with the endpoint Hamming distance."""


@dataclass(eq=False)
class LimaxNetwork:
    """Traversal-level move arrays plus the collapsed distinct-edge view."""

    n: int
    problem_id: str
    move_from: np.ndarray
    move_to: np.ndarray
    move_step: np.ndarray
    edge_from: np.ndarray
    edge_to: np.ndarray
    edge_step: np.ndarray
    edge_mult: np.ndarray

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def total_moves(self) -> int:
        return int(self.move_step.size)

    @property
    def unique_edges(self) -> int:
        return int(self.edge_from.size)

    def multiplicity(self, x: int, y: int) -> int:
        key = (np.int64(x) << self.n) | np.int64(y)
        keys = (self.edge_from << self.n) | self.edge_to
        idx = np.searchsorted(keys, key)
        if idx < keys.size and keys[idx] == key:
            return int(self.edge_mult[idx])
        return 0


def build_network(ws: WalkSet) -> LimaxNetwork:
    """Accumulate all walk moves; order of walks cannot affect the result."""
    froms: list[int] = []
    tos: list[int] = []
    steps: list[int] = []
    for walk in ws.walks:
        prev = walk.start
        for to, step in walk.moves:
            froms.append(prev)
            tos.append(to)
            steps.append(step)
            prev = to
    move_from = np.asarray(froms, dtype=np.int64)
    move_to = np.asarray(tos, dtype=np.int64)
    move_step = np.asarray(steps, dtype=np.int64)
    bad = popcount_array(move_from ^ move_to) != move_step
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise NetworkCorruptionError(
            f"move {move_from[i]}->{move_to[i]} recorded step {move_step[i]}, "
            f"hamming is {int(popcount_array(move_from[i] ^ move_to[i]))}"
        )
    keys = (move_from << ws.n) | move_to
    unique_keys, first_idx, mult = np.unique(keys, return_index=True, return_counts=True)
    return LimaxNetwork(
        n=ws.n,
        problem_id=ws.problem_id,
        move_from=move_from,
        move_to=move_to,
        move_step=move_step,
        edge_from=unique_keys >> ws.n,
        edge_to=unique_keys & ((1 << ws.n) - 1),
        edge_step=move_step[first_idx],
        edge_mult=mult.astype(np.int64),
    )


@dataclass(frozen=True)
class NodeAggregates:
    """Per-node structural aggregates over traversal multisets.

    The six step statistics use 0 as the empty-side sentinel (real step
    sizes are >= 1).
    """

    in_degree: int
    out_degree: int
    in_step_strength: float
    out_step_strength: float
    in_invstep_strength: float
    out_invstep_strength: float
    viscosity: float
    is_source: bool
    is_sink: bool
    in_max: int
    in_avg: float
    in_mode: int
    out_min: int
    out_avg: float
    out_mode: int


class NodeStatsTable:
    """Vectorized NodeAggregates for every genotype; indexable by node."""

    FIELDS = (
        "in_degree", "out_degree", "in_step_strength", "out_step_strength",
        "in_invstep_strength", "out_invstep_strength", "viscosity",
        "is_source", "is_sink", "in_max", "in_avg", "in_mode",
        "out_min", "out_avg", "out_mode",
    )

    def __init__(self, net: LimaxNetwork):
        size = net.size
        self.n = net.n
        inv = 1.0 / net.move_step
        self.in_degree = np.bincount(net.move_to, minlength=size)
        self.out_degree = np.bincount(net.move_from, minlength=size)
        self.in_step_strength = np.bincount(net.move_to, weights=net.move_step, minlength=size)
        self.out_step_strength = np.bincount(net.move_from, weights=net.move_step, minlength=size)
        self.in_invstep_strength = np.bincount(net.move_to, weights=inv, minlength=size)
        self.out_invstep_strength = np.bincount(net.move_from, weights=inv, minlength=size)
        self.viscosity = np.where(
            self.out_invstep_strength > 0,
            self.in_invstep_strength / np.where(self.out_invstep_strength > 0, self.out_invstep_strength, 1.0),
            self.in_invstep_strength,
        )
        self.is_source = self.in_degree == 0
        self.is_sink = self.out_degree == 0

        self.in_max = np.zeros(size, dtype=np.int64)
        np.maximum.at(self.in_max, net.move_to, net.move_step)
        out_min = np.full(size, np.iinfo(np.int64).max, dtype=np.int64)
        np.minimum.at(out_min, net.move_from, net.move_step)
        out_min[self.is_sink] = 0
        self.out_min = out_min

        with np.errstate(invalid="ignore", divide="ignore"):
            self.in_avg = np.where(self.in_degree > 0, self.in_step_strength / np.maximum(self.in_degree, 1), 0.0)
            self.out_avg = np.where(self.out_degree > 0, self.out_step_strength / np.maximum(self.out_degree, 1), 0.0)

        self.in_mode = _mode_by_node(net.move_to, net.move_step, size, net.n)
        self.out_mode = _mode_by_node(net.move_from, net.move_step, size, net.n)

    def __len__(self) -> int:
        return int(self.in_degree.size)

    def __getitem__(self, node: int) -> NodeAggregates:
        return NodeAggregates(
            in_degree=int(self.in_degree[node]),
            out_degree=int(self.out_degree[node]),
            in_step_strength=float(self.in_step_strength[node]),
            out_step_strength=float(self.out_step_strength[node]),
            in_invstep_strength=float(self.in_invstep_strength[node]),
            out_invstep_strength=float(self.out_invstep_strength[node]),
            viscosity=float(self.viscosity[node]),
            is_source=bool(self.is_source[node]),
            is_sink=bool(self.is_sink[node]),
            in_max=int(self.in_max[node]),
            in_avg=float(self.in_avg[node]),
            in_mode=int(self.in_mode[node]),
            out_min=int(self.out_min[node]),
            out_avg=float(self.out_avg[node]),
            out_mode=int(self.out_mode[node]),
        )


def _mode_by_node(nodes: np.ndarray, steps: np.ndarray, size: int, n: int) -> np.ndarray:
    # most frequent step size per node, ties to the smallest value; 0 when
    # the side is empty
    best_count = np.zeros(size, dtype=np.int64)
    mode = np.zeros(size, dtype=np.int64)
    for s in range(1, n + 1):
        sel = nodes[steps == s]
        if sel.size == 0:
            continue
        cnt = np.bincount(sel, minlength=size)
        better = cnt > best_count
        mode[better] = s
        best_count[better] = cnt[better]
    return mode


def node_aggregates(net: LimaxNetwork) -> NodeStatsTable:
    return NodeStatsTable(net)


@dataclass(frozen=True)
class NetworkCounts:
    unique_edges: int
    source_count: int
    sink_count: int
    component_count: int


def network_counts(net: LimaxNetwork, stats: NodeStatsTable | None = None) -> NetworkCounts:
    """Distinct-pair edge count, source/sink totals, and the number of
    weakly connected components over all 2^n nodes."""
    if stats is None:
        stats = NodeStatsTable(net)
    graph = coo_matrix(
        (np.ones(net.unique_edges, dtype=np.int8), (net.edge_from, net.edge_to)),
        shape=(net.size, net.size),
    )
    components, _ = connected_components(graph, directed=True, connection="weak")
    return NetworkCounts(
        unique_edges=net.unique_edges,
        source_count=int(stats.is_source.sum()),
        sink_count=int(stats.is_sink.sum()),
        component_count=int(components),
    )


def reversed_cumulative_distribution(values) -> list[tuple[float, float]]:
    """(v, fraction of entries >= v) for each distinct value, ascending.

    Fractions start at 1.0 and never increase; this is the form plotted on
    double-log axes to eyeball scale-free behaviour.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("reversed cumulative distribution of empty input")
    distinct, counts = np.unique(arr, return_counts=True)
    at_least = np.cumsum(counts[::-1])[::-1]
    return [(float(v), float(c) / arr.size) for v, c in zip(distinct, at_least)]


def save_edges_csv(net: LimaxNetwork, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["from", "to", "step", "multiplicity"])
        for f, t, s, m in zip(net.edge_from, net.edge_to, net.edge_step, net.edge_mult):
            writer.writerow([int(f), int(t), int(s), int(m)])


def save_node_stats_csv(stats: NodeStatsTable, path: str | Path) -> None:
    columns = [getattr(stats, name) for name in NodeStatsTable.FIELDS]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("node",) + NodeStatsTable.FIELDS)
        for node in range(len(stats)):
            row = [node]
            for col in columns:
                v = col[node]
                if isinstance(v, np.bool_):
                    row.append(int(v))
                elif isinstance(v, np.floating):
                    row.append(repr(float(v)))
                else:
                    row.append(int(v))
            writer.writerow(row)


def save_graphml(net: LimaxNetwork, path: str | Path) -> None:
    """Distinct edges with step and multiplicity attributes; only nodes that
    touch an edge are emitted."""
    used = sorted(set(net.edge_from.tolist()) | set(net.edge_to.tolist()))
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="step" for="edge" attr.name="step" attr.type="int"/>',
        '  <key id="multiplicity" for="edge" attr.name="multiplicity" attr.type="int"/>',
        f'  <graph id="{escape(net.problem_id)}" edgedefault="directed">',
    ]
    lines.extend(f'    <node id="n{v}"/>' for v in used)
    for f, t, s, m in zip(net.edge_from, net.edge_to, net.edge_step, net.edge_mult):
        lines.append(
            f'    <edge source="n{int(f)}" target="n{int(t)}">'
            f'<data key="step">{int(s)}</data>'
            f'<data key="multiplicity">{int(m)}</data></edge>'
        )
    lines.append("  </graph>")
    lines.append("</graphml>")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
