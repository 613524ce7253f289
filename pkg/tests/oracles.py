"""Naive reference implementations used only to check the real ones.

Everything here works from first principles (scalar fitness evaluation,
full-space scans, pairwise loops) and deliberately shares no code with the
package's fast paths beyond the RNG stream contract.
"""

from __future__ import annotations

from limax import Problem, SplitMix64, Walk
from limax.bits import hamming


def oracle_walk(problem: Problem, start: int, walk_seed: int, max_step: int | None = None) -> Walk:
    """Replay the pivot rule by exhaustive scan of the whole space.

    At each node, every genotype is classified by Hamming distance and
    scalar fitness; unvisited strictly fitter candidates at the smallest
    distance are collected in ascending flip-mask order and one is drawn
    with the same seeded stream the walker uses (one draw per move).
    """
    n = problem.n
    cap = n if max_step is None else max_step
    rng = SplitMix64(walk_seed)
    cur = start
    visited = {start}
    moves: list[tuple[int, int]] = []
    while True:
        fc = problem.evaluate(cur)
        chosen = None
        for d in range(1, cap + 1):
            group = [
                g for g in range(problem.size)
                if g not in visited and hamming(g, cur) == d and problem.evaluate(g) > fc
            ]
            if group:
                group.sort(key=lambda g: g ^ cur)
                chosen = (group[rng.randrange(len(group))], d)
                break
        if chosen is None:
            return Walk(start=start, moves=tuple(moves))
        nxt, d = chosen
        moves.append((nxt, d))
        visited.add(nxt)
        cur = nxt


def oracle_mean_pairwise_hamming(nodes) -> float:
    nodes = list(nodes)
    total = 0
    pairs = 0
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            total += hamming(nodes[i], nodes[j])
            pairs += 1
    return total / pairs


def oracle_hiff(g: int, n: int) -> int:
    """Block-table HIFF evaluation (iterative, no recursion shared with the
    package implementation)."""
    bits = [(g >> i) & 1 for i in range(n)]
    blocks = [(b, True) for b in bits]  # (uniform value or None, is_uniform)
    score = len(bits)  # unit blocks
    size = 1
    while len(blocks) > 1:
        size *= 2
        merged = []
        for left, right in zip(blocks[0::2], blocks[1::2]):
            uniform = left[1] and right[1] and left[0] == right[0]
            if uniform:
                score += size
            merged.append((left[0] if uniform else None, uniform))
        blocks = merged
    return score
