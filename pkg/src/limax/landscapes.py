"""Test problems: NK with random neighbourhoods, OneMax, and HIFF.

A :class:`Problem` bundles a fitness function over length-n bit strings with
the data needed to regenerate it exactly. Fitness comparison throughout the
package is exact floating point (no epsilon): walk topology depends on it.

Custom fitness kinds (e.g. other hierarchical functions) can be plugged in
through :meth:`Problem.custom` without touching the rest of the pipeline.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bits import check_length, popcount_array
from .rng import SplitMix64, mix64

log = logging.getLogger(__name__)

KIND_NK = "nk"
KIND_ONEMAX = "onemax"
KIND_HIFF = "hiff_c"
_SERIALIZABLE_KINDS = (KIND_NK, KIND_ONEMAX, KIND_HIFF)


@dataclass(frozen=True)
class NKInstance:
    """One concrete NK landscape: neighbourhoods plus contribution tables.

    Locus i's fitness contribution is looked up by the (k+1)-bit local
    configuration built with the locus's own bit as the high-order bit,
    followed by its neighbours in ascending locus index. Regenerating from
    (n, k, seed) reproduces the instance bit-for-bit.
    """

    n: int
    k: int
    seed: int
    neighbourhoods: tuple[tuple[int, ...], ...]
    tables: tuple[tuple[float, ...], ...]

    def local_index(self, g: int, i: int) -> int:
        idx = ((g >> i) & 1) << self.k
        shift = self.k - 1
        for j in self.neighbourhoods[i]:
            idx |= ((g >> j) & 1) << shift
            shift -= 1
        return idx


def nk_generate(n: int, k: int, seed: int) -> NKInstance:
    """Draw an NK instance fully determined by (n, k, seed).

    Each locus gets its own SplitMix64 stream seeded by mix64(seed, i); the
    stream first draws the k-locus neighbourhood (uniform, without
    replacement, excluding the locus itself), then the 2^(k+1) table values
    i.i.d. uniform on [0, 1).
    """
    check_length(n)
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must be in [0, n-1] = [0, {n - 1}], got {k}")
    neighbourhoods = []
    tables = []
    for i in range(n):
        rng = SplitMix64(mix64(seed, i))
        others = [j for j in range(n) if j != i]
        neighbourhoods.append(tuple(sorted(rng.sample(others, k))))
        tables.append(tuple(rng.uniform() for _ in range(1 << (k + 1))))
    return NKInstance(n=n, k=k, seed=seed, neighbourhoods=tuple(neighbourhoods), tables=tuple(tables))


@dataclass(eq=False)
class Problem:
    """A fitness function over length-n genotypes, immutable after construction.

    ``evaluate`` is pure and safe to call concurrently; the full-space
    fitness table is computed lazily once and then shared read-only.
    """

    kind: str
    n: int
    identifier: str
    nk: NKInstance | None = None
    fitness_fn: Callable[[int], float] | None = field(default=None, repr=False)
    _table: np.ndarray | None = field(default=None, repr=False)

    @staticmethod
    def from_nk(instance: NKInstance, identifier: str | None = None) -> "Problem":
        ident = identifier or f"nk_n{instance.n}_k{instance.k}_s{instance.seed}"
        return Problem(kind=KIND_NK, n=instance.n, identifier=ident, nk=instance)

    @staticmethod
    def onemax(n: int, identifier: str | None = None) -> "Problem":
        check_length(n)
        return Problem(kind=KIND_ONEMAX, n=n, identifier=identifier or f"onemax_n{n}")

    @staticmethod
    def hiff(n: int, identifier: str | None = None) -> "Problem":
        check_length(n)
        if n & (n - 1):
            raise ValueError(f"HIFF requires n to be a power of two, got {n}")
        return Problem(kind=KIND_HIFF, n=n, identifier=identifier or f"hiff_n{n}")

    @staticmethod
    def custom(kind: str, n: int, fitness_fn: Callable[[int], float], identifier: str | None = None) -> "Problem":
        """Plugin slot for fitness kinds not shipped here (e.g. HIFF variants)."""
        check_length(n)
        return Problem(kind=kind, n=n, identifier=identifier or f"{kind}_n{n}", fitness_fn=fitness_fn)

    @property
    def size(self) -> int:
        return 1 << self.n

    def _check_genotype(self, g: int) -> None:
        if not 0 <= g < self.size:
            raise ValueError(f"genotype {g} out of range for n={self.n}")

    def evaluate(self, g: int) -> float:
        """Fitness of a single genotype (pure, deterministic)."""
        self._check_genotype(g)
        if self.kind == KIND_ONEMAX:
            return float(g.bit_count())
        if self.kind == KIND_HIFF:
            return float(_hiff_value(g, self.n))
        if self.kind == KIND_NK:
            inst = self.nk
            total = 0.0
            for i in range(inst.n):
                total += inst.tables[i][inst.local_index(g, i)]
            return total / inst.n
        if self.fitness_fn is not None:
            return float(self.fitness_fn(g))
        raise ValueError(f"problem kind {self.kind!r} has no fitness function")

    def fitness_table(self) -> np.ndarray:
        """Fitness of every genotype in [0, 2^n), index = genotype.

        Matches ``evaluate`` exactly (same floating-point operation order),
        so exact comparisons agree between the scalar and table paths.
        """
        if self._table is None:
            self._table = _build_table(self)
            self._table.flags.writeable = False
        return self._table

    def global_optima(self) -> set[int]:
        """All argmax genotypes under exact fitness comparison (full scan)."""
        table = self.fitness_table()
        return set(int(g) for g in np.flatnonzero(table == table.max()))


def _hiff_value(g: int, size: int) -> int:
    # unit blocks contribute 1; a uniform block of size s adds s on top of
    # the two half-block contributions
    if size == 1:
        return 1
    half = size >> 1
    low = g & ((1 << half) - 1)
    high = g >> half
    bonus = size if (g == 0 or g == (1 << size) - 1) else 0
    return bonus + _hiff_value(low, half) + _hiff_value(high, half)


def _build_table(problem: Problem) -> np.ndarray:
    size = problem.size
    if problem.kind == KIND_ONEMAX:
        return popcount_array(np.arange(size, dtype=np.int64)).astype(np.float64)
    if problem.kind == KIND_HIFF:
        return _hiff_table(problem.n)
    if problem.kind == KIND_NK:
        return _nk_table(problem.nk)
    return np.array([problem.evaluate(g) for g in range(size)], dtype=np.float64)


def _hiff_table(n: int) -> np.ndarray:
    scores = np.ones(2, dtype=np.float64)
    size = 1
    while size < n:
        size *= 2
        half = size // 2
        values = np.arange(1 << size, dtype=np.int64)
        low = values & ((1 << half) - 1)
        high = values >> half
        next_scores = scores[low] + scores[high]
        next_scores[0] += size
        next_scores[-1] += size
        scores = next_scores
    return scores


def _nk_table(inst: NKInstance) -> np.ndarray:
    values = np.arange(1 << inst.n, dtype=np.int64)
    total = np.zeros(1 << inst.n, dtype=np.float64)
    # accumulate locus by locus in the same order as the scalar evaluator so
    # both paths produce bit-identical floats
    for i in range(inst.n):
        idx = ((values >> i) & 1) << inst.k
        shift = inst.k - 1
        for j in inst.neighbourhoods[i]:
            idx |= ((values >> j) & 1) << shift
            shift -= 1
        total += np.asarray(inst.tables[i], dtype=np.float64)[idx]
    total /= inst.n
    return total


def enumerate_global_optima(problem: Problem) -> set[int]:
    """Exhaustive argmax scan; see :meth:`Problem.global_optima`."""
    return problem.global_optima()


def nk_generate_unique_optimum(n: int, k: int, seed: int, max_tries: int = 16) -> tuple[NKInstance, int]:
    """nk_generate, retrying with seed+1 on the measure-zero optimum tie.

    Returns the instance and the seed actually used.
    """
    for attempt in range(max_tries):
        inst = nk_generate(n, k, seed + attempt)
        if len(Problem.from_nk(inst).global_optima()) == 1:
            if attempt:
                log.warning(
                    "NK(%d,%d) seed %d had tied global optima; regenerated with seed %d",
                    n, k, seed, seed + attempt,
                )
            return inst, seed + attempt
    raise RuntimeError(f"no unique-optimum NK({n},{k}) instance found near seed {seed}")


def save_problem(problem: Problem, path: str | Path) -> None:
    """Write an instance file (JSON). Table values are stored as hex floats
    so reload is exact."""
    if problem.kind not in _SERIALIZABLE_KINDS:
        raise ValueError(f"kind {problem.kind!r} is plugin-only and cannot be serialized")
    doc: dict = {"kind": problem.kind, "n": problem.n, "identifier": problem.identifier}
    if problem.kind == KIND_NK:
        inst = problem.nk
        doc["k"] = inst.k
        doc["seed"] = inst.seed
        doc["neighbourhoods"] = [list(nb) for nb in inst.neighbourhoods]
        doc["tables"] = [[v.hex() for v in tbl] for tbl in inst.tables]
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n", encoding="utf-8")


def load_problem(path: str | Path) -> Problem:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    kind = doc["kind"]
    n = int(doc["n"])
    identifier = doc["identifier"]
    if kind == KIND_ONEMAX:
        return Problem.onemax(n, identifier)
    if kind == KIND_HIFF:
        return Problem.hiff(n, identifier)
    if kind == KIND_NK:
        inst = NKInstance(
            n=n,
            k=int(doc["k"]),
            seed=int(doc["seed"]),
            neighbourhoods=tuple(tuple(int(j) for j in nb) for nb in doc["neighbourhoods"]),
            tables=tuple(tuple(float.fromhex(v) for v in tbl) for tbl in doc["tables"]),
        )
        return Problem.from_nk(inst, identifier)
    raise ValueError(f"unknown problem kind {kind!r} in {path}")
