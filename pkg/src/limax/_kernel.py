"""Compiled inner loop for full-space walk runs.

Replays exactly the same SplitMix64 stream and candidate enumeration as the
pure-Python walk in :mod:`limax.walker`; the two paths must produce
bit-identical walks (tested), so everything here is a speedup, never a
semantic fork. All integer arithmetic is unsigned 64-bit with wraparound.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U0 = np.uint64(0)
GAMMA = np.uint64(0x9E3779B97F4A7C15)
MIX1 = np.uint64(0xBF58476D1CE4E5B9)
MIX2 = np.uint64(0x94D049BB133111EB)
S30 = np.uint64(30)
S27 = np.uint64(27)
S31 = np.uint64(31)

P1 = np.uint64(0x5555555555555555)
P2 = np.uint64(0x3333333333333333)
P4 = np.uint64(0x0F0F0F0F0F0F0F0F)
PM = np.uint64(0x0101010101010101)
S1 = np.uint64(1)
S2 = np.uint64(2)
S4 = np.uint64(4)
S56 = np.uint64(56)


@njit(cache=True, inline="always")
def _finalize(z):
    z = (z ^ (z >> S30)) * MIX1
    z = (z ^ (z >> S27)) * MIX2
    return z ^ (z >> S31)


@njit(cache=True, inline="always")
def _next_u64(state):
    state = state + GAMMA
    return _finalize(state), state


@njit(cache=True, inline="always")
def _randrange(state, k):
    # rejection sampling, identical acceptance region to SplitMix64.randrange
    ku = np.uint64(k)
    r = (U0 - ku) % ku
    if r == U0:
        u, state = _next_u64(state)
        return np.int64(u % ku), state
    limit = U0 - r
    while True:
        u, state = _next_u64(state)
        if u < limit:
            return np.int64(u % ku), state


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> S1) & P1)
    x = (x & P2) + ((x >> S2) & P2)
    x = (x + (x >> S4)) & P4
    return np.int64((x * PM) >> S56)


@njit(cache=True, inline="always")
def _mix_absorb(h, value):
    # one absorption step of limax.rng.mix64
    return _finalize(h + GAMMA + value)


@njit(cache=True)
def run_all_kernel(master_seed, table, improving1, masks, mask_lo, mask_hi, cap,
                   out_to, out_step, offsets, visited, vfits):
    """One walk from every genotype, moves packed into out_to/out_step.

    offsets[g]:offsets[g+1] delimits walk g's moves. Returns (total moves,
    total visited-rejections); total moves is -1 if the output buffers are
    too small (caller grows and reruns; runs are deterministic).

    Walk g's stream seed is mix64(master_seed, g), computed inline.
    """
    size = np.int64(table.size)
    capacity = np.int64(out_to.size)
    master = _mix_absorb(U0, master_seed)
    pos = np.int64(0)
    rejections = np.int64(0)
    for start in range(size):
        offsets[start] = pos
        state = _mix_absorb(master, np.uint64(start))
        cur = start
        fc = table[cur]
        visited[0] = cur
        vfits[0] = fc
        vcount = np.int64(1)
        while True:
            to = np.int64(-1)
            step = np.int64(0)
            m = improving1[cur]
            if m != 0:
                pick, state = _randrange(state, _popcount(np.uint64(m)))
                for _ in range(pick):
                    m &= m - 1
                to = cur ^ (m & (-m))
                step = 1
            else:
                for d in range(2, cap + 1):
                    count = np.int64(0)
                    for i in range(mask_lo[d], mask_hi[d]):
                        if table[cur ^ masks[i]] > fc:
                            count += 1
                    if count > 0:
                        pick, state = _randrange(state, count)
                        seen = np.int64(0)
                        for i in range(mask_lo[d], mask_hi[d]):
                            cand = cur ^ masks[i]
                            if table[cand] > fc:
                                if seen == pick:
                                    to = cand
                                    step = d
                                    break
                                seen += 1
                        break
            scanned = step if step > 0 else cap
            for t in range(vcount):
                if vfits[t] > fc and _popcount(np.uint64(visited[t] ^ cur)) <= scanned:
                    rejections += 1
            if to < 0:
                break
            if pos == capacity:
                return np.int64(-1), rejections
            out_to[pos] = to
            out_step[pos] = step
            pos += 1
            cur = to
            fc = table[cur]
            visited[vcount] = cur
            vfits[vcount] = fc
            vcount += 1
    offsets[size] = pos
    return pos, rejections
