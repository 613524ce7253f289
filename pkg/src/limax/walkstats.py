"""Per-walk and per-instance step statistics.

Step sequences are summarized by length, distance, run-length compression,
variability, and shape. A walk is *hierarchical* when its compressed step
sequence has more than one entry and is strictly increasing; the fraction of
hierarchical walks separates structured rugged landscapes (HIFF) from
anarchic ones (NK).
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .stats import Summary, summarize
from .walker import Walk, WalkSet


def compress(steps: Sequence[int]) -> list[int]:
    """Collapse runs of equal consecutive steps to a single step."""
    out: list[int] = []
    for s in steps:
        if not out or out[-1] != s:
            out.append(s)
    return out


@dataclass(frozen=True)
class WalkMetrics:
    wlen: int
    cwlen: int
    wdist: int
    cwdist: int
    cr1: float  # cwlen / wlen; nan for the empty walk
    cr2: float  # cwdist / wdist; nan for the empty walk
    wvar: int  # number of distinct step sizes
    step_range: int  # max step - min step
    adaptive_length: int  # longest run of equal steps
    hierarchical: bool


def walk_metrics(walk: Walk) -> WalkMetrics:
    steps = walk.steps
    wlen = len(steps)
    compressed = compress(steps)
    cwlen = len(compressed)
    wdist = sum(steps)
    cwdist = sum(compressed)
    if wlen == 0:
        return WalkMetrics(0, 0, 0, 0, math.nan, math.nan, 0, 0, 0, False)
    longest_run = 1
    run = 1
    for prev, cur in zip(steps, steps[1:]):
        run = run + 1 if cur == prev else 1
        longest_run = max(longest_run, run)
    increasing = all(a < b for a, b in zip(compressed, compressed[1:]))
    return WalkMetrics(
        wlen=wlen,
        cwlen=cwlen,
        wdist=wdist,
        cwdist=cwdist,
        cr1=cwlen / wlen,
        cr2=cwdist / wdist,
        wvar=len(set(steps)),
        step_range=max(steps) - min(steps),
        adaptive_length=longest_run,
        hierarchical=cwlen > 1 and increasing,
    )


@dataclass(frozen=True)
class WalkSetSummary:
    """Instance-level aggregates over all walks.

    Length and distance summaries cover every walk (including the global
    optimum's empty walk); ratio- and shape-type summaries cover walks with
    at least one move, since those quantities are undefined at wlen = 0. The
    hierarchical fraction keeps all 2^n walks in its denominator.
    """

    walk_count: int
    total_moves: int
    wlen: Summary
    cwlen: Summary
    wdist: Summary
    cwdist: Summary
    cr1: Summary | None
    cr2: Summary | None
    wvar: Summary | None
    step_range: Summary | None
    adaptive_length: Summary | None
    mean_step_size: float  # pooled over every step of every walk
    whier: float
    hierarchical_count: int
    max_adaptive_length: int


def compute_all_metrics(ws: WalkSet) -> list[WalkMetrics]:
    return [walk_metrics(w) for w in ws.walks]


def aggregate_walkset(ws: WalkSet, metrics: Sequence[WalkMetrics] | None = None) -> WalkSetSummary:
    if metrics is None:
        metrics = compute_all_metrics(ws)
    if len(metrics) != len(ws.walks):
        raise ValueError("metrics must cover every walk in the set")
    moved = [m for m in metrics if m.wlen > 0]
    total_moves = sum(m.wlen for m in metrics)
    hier = sum(1 for m in metrics if m.hierarchical)

    def over_moved(pick) -> Summary | None:
        return summarize([pick(m) for m in moved]) if moved else None

    return WalkSetSummary(
        walk_count=len(metrics),
        total_moves=total_moves,
        wlen=summarize([m.wlen for m in metrics]),
        cwlen=summarize([m.cwlen for m in metrics]),
        wdist=summarize([m.wdist for m in metrics]),
        cwdist=summarize([m.cwdist for m in metrics]),
        cr1=over_moved(lambda m: m.cr1),
        cr2=over_moved(lambda m: m.cr2),
        wvar=over_moved(lambda m: m.wvar),
        step_range=over_moved(lambda m: m.step_range),
        adaptive_length=over_moved(lambda m: m.adaptive_length),
        mean_step_size=(sum(m.wdist for m in metrics) / total_moves) if total_moves else 0.0,
        whier=hier / len(metrics),
        hierarchical_count=hier,
        max_adaptive_length=max((m.adaptive_length for m in moved), default=0),
    )
