"""Self-avoiding adaptive walks with unbounded step size (Limax).

The pivot rule: from the current point, scan Hamming distances d = 1, 2, ...
and move to a uniformly chosen, not-yet-visited, strictly fitter point at the
smallest d where one exists; stop when no allowed distance offers an
improvement. Because the step size is unbounded, every uncapped walk ends at
a global optimum. An optional cap turns this into the bounded-step variant.

Under strict improvement, self-avoidance can never actually reject a
candidate (everything already visited is strictly less fit than the current
point), so the scan skips the visited check and instead audits that the
rejection count stays at zero; a nonzero count means the fitness comparison
is broken.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bits import distance_masks, flat_masks, hamming
from .landscapes import Problem
from .rng import SplitMix64, mix64

try:
    from ._kernel import run_all_kernel as _run_all_kernel
except ImportError:  # pragma: no cover - numba missing or broken
    _run_all_kernel = None


@dataclass(frozen=True)
class Walk:
    """One walk: a start genotype plus ordered (destination, step-size) moves."""

    start: int
    moves: tuple[tuple[int, int], ...]

    @property
    def terminal(self) -> int:
        return self.moves[-1][0] if self.moves else self.start

    @property
    def steps(self) -> tuple[int, ...]:
        return tuple(step for _, step in self.moves)

    @property
    def nodes(self) -> tuple[int, ...]:
        return (self.start,) + tuple(to for to, _ in self.moves)

    def __len__(self) -> int:
        return len(self.moves)


@dataclass
class WalkSet:
    """One walk per genotype, indexed by start point."""

    problem_id: str
    n: int
    master_seed: int
    max_step: int | None
    walks: list[Walk]
    visited_rejections: int = 0

    def __post_init__(self) -> None:
        if len(self.walks) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} walks, got {len(self.walks)}")
        for g, walk in enumerate(self.walks):
            if walk.start != g:
                raise ValueError(f"walk {g} has start {walk.start}")

    def total_moves(self) -> int:
        return sum(len(w) for w in self.walks)


class LimaxWalker:
    """Walk engine for one problem: caches the fitness table and the
    per-genotype bitmask of improving 1-bit flips (the hot path)."""

    def __init__(self, problem: Problem):
        self.problem = problem
        self.n = problem.n
        self.table = problem.fitness_table()
        values = np.arange(problem.size, dtype=np.int64)
        improving = np.zeros(problem.size, dtype=np.int64)
        for i in range(self.n):
            improving |= (self.table[values ^ (1 << i)] > self.table).astype(np.int64) << i
        self._improving1 = improving

    def walk(self, start: int, walk_seed: int, max_step: int | None = None) -> tuple[Walk, int]:
        """Run one walk; returns (walk, visited-rejection count).

        The rejection count is the number of scanned candidates that were
        strictly fitter but already visited; strict improvement guarantees 0.
        """
        self.problem._check_genotype(start)
        n = self.n
        cap = n if max_step is None else max_step
        if not 1 <= cap <= n:
            raise ValueError(f"max_step must be in [1, {n}], got {max_step}")
        table = self.table
        improving1 = self._improving1
        rng = SplitMix64(walk_seed)
        cur = start
        fc = float(table[cur])
        visited: list[int] = [start]
        visited_fits: list[float] = [fc]
        moves: list[tuple[int, int]] = []
        rejections = 0
        while True:
            to = -1
            step = 0
            mask = int(improving1[cur])
            if mask:
                count = mask.bit_count()
                pick = rng.randrange(count)
                for _ in range(pick):
                    mask &= mask - 1
                to = cur ^ (mask & -mask)
                step = 1
            else:
                for d in range(2, cap + 1):
                    candidates = distance_masks(n, d) ^ cur
                    fitter = candidates[table[candidates] > fc]
                    if fitter.size:
                        to = int(fitter[rng.randrange(fitter.size)])
                        step = d
                        break
            scanned = step if step else cap
            for v, vf in zip(visited, visited_fits):
                if vf > fc and hamming(v, cur) <= scanned:
                    rejections += 1
            if to < 0:
                return Walk(start=start, moves=tuple(moves)), rejections
            moves.append((to, step))
            cur = to
            fc = float(table[cur])
            visited.append(cur)
            visited_fits.append(fc)

    def run_all(self, master_seed: int, max_step: int | None = None,
                use_kernel: bool | None = None) -> WalkSet:
        """One walk from every genotype.

        Each start g gets its own stream seeded by mix64(master_seed, g), so
        the result does not depend on the order in which walks are run. The
        compiled kernel is used when available; it replays the identical
        stream, so both paths return the same WalkSet.
        """
        if use_kernel is None:
            use_kernel = _run_all_kernel is not None
        if use_kernel and _run_all_kernel is None:
            raise RuntimeError("compiled walk kernel unavailable (numba not importable)")
        runner = self._run_all_compiled if use_kernel else self._run_all_python
        walks, rejections = runner(master_seed, max_step)
        return WalkSet(
            problem_id=self.problem.identifier,
            n=self.n,
            master_seed=master_seed,
            max_step=max_step,
            walks=walks,
            visited_rejections=rejections,
        )

    def _run_all_python(self, master_seed: int, max_step: int | None) -> tuple[list[Walk], int]:
        walks = []
        rejections = 0
        for start in range(self.problem.size):
            walk, rej = self.walk(start, mix64(master_seed, start), max_step)
            walks.append(walk)
            rejections += rej
        return walks, rejections

    def _run_all_compiled(self, master_seed: int, max_step: int | None) -> tuple[list[Walk], int]:
        size = self.problem.size
        cap = self.n if max_step is None else max_step
        if not 1 <= cap <= self.n:
            raise ValueError(f"max_step must be in [1, {self.n}], got {max_step}")
        masks, lo, hi = flat_masks(self.n)
        offsets = np.empty(size + 1, dtype=np.int64)
        visited = np.empty(size, dtype=np.int64)
        vfits = np.empty(size, dtype=np.float64)
        capacity = 16 * size
        while True:
            out_to = np.empty(capacity, dtype=np.int64)
            out_step = np.empty(capacity, dtype=np.int64)
            total, rejections = _run_all_kernel(
                np.uint64(master_seed & ((1 << 64) - 1)), self.table, self._improving1,
                masks, lo, hi, np.int64(cap), out_to, out_step, offsets, visited, vfits,
            )
            if total >= 0:
                break
            capacity *= 2
        tos = out_to[:total].tolist()
        steps = out_step[:total].tolist()
        bounds = offsets.tolist()
        walks = [
            Walk(start=start, moves=tuple(zip(tos[bounds[start]:bounds[start + 1]],
                                              steps[bounds[start]:bounds[start + 1]])))
            for start in range(size)
        ]
        return walks, int(rejections)


def limax_walk(problem: Problem, start: int, walk_seed: int, max_step: int | None = None) -> Walk:
    return LimaxWalker(problem).walk(start, walk_seed, max_step)[0]


def run_all_walks(problem: Problem, master_seed: int, max_step: int | None = None) -> WalkSet:
    return LimaxWalker(problem).run_all(master_seed, max_step)


def save_walkset(ws: WalkSet, path: str | Path) -> None:
    """Lossless CSV: a provenance header block, then one row per move."""
    buf = io.StringIO()
    buf.write(f"# problem_id={ws.problem_id}\n")
    buf.write(f"# n={ws.n}\n")
    buf.write(f"# master_seed={ws.master_seed}\n")
    buf.write(f"# max_step={'' if ws.max_step is None else ws.max_step}\n")
    buf.write(f"# visited_rejections={ws.visited_rejections}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["start", "step_index", "to", "step_size"])
    for walk in ws.walks:
        for idx, (to, step) in enumerate(walk.moves):
            writer.writerow([walk.start, idx, to, step])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def load_walkset(path: str | Path) -> WalkSet:
    header: dict[str, str] = {}
    moves_by_start: dict[int, list[tuple[int, int, int]]] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        rows = []
        for line in fh:
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                header[key.strip()] = value.strip()
            else:
                rows.append(line)
        for row in csv.reader(rows[1:]):
            if not row:
                continue
            start, idx, to, step = (int(v) for v in row)
            moves_by_start.setdefault(start, []).append((idx, to, step))
    n = int(header["n"])
    walks = []
    for g in range(1 << n):
        moves = sorted(moves_by_start.get(g, []))
        walks.append(Walk(start=g, moves=tuple((to, step) for _, to, step in moves)))
    return WalkSet(
        problem_id=header["problem_id"],
        n=n,
        master_seed=int(header["master_seed"]),
        max_step=int(header["max_step"]) if header.get("max_step") else None,
        walks=walks,
        visited_rejections=int(header.get("visited_rejections", "0")),
    )
