"""Bit-vector genotype helpers.

A genotype of length n is stored as its canonical unsigned integer in
[0, 2^n); bit i is locus i. All neighbourhood enumeration is in ascending
flip-mask order, which downstream code relies on for reproducible draws.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

MAX_N = 24


def hamming(a: int, b: int) -> int:
    """Number of differing bit positions."""
    return (a ^ b).bit_count()


def complement(g: int, n: int) -> int:
    return g ^ ((1 << n) - 1)


def popcount_array(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a)


def check_length(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"genotype length must be in [1, {MAX_N}], got {n}")


_mask_cache: dict[tuple[int, int], np.ndarray] = {}


def distance_masks(n: int, d: int) -> np.ndarray:
    """All n-bit masks with exactly d set bits, ascending by integer value.

    XORing a genotype with these masks enumerates its full Hamming-distance-d
    neighbourhood. Cached per (n, d); arrays are immutable.
    """
    check_length(n)
    if not 1 <= d <= n:
        raise ValueError(f"distance must be in [1, {n}], got {d}")
    key = (n, d)
    cached = _mask_cache.get(key)
    if cached is None:
        masks = np.fromiter(
            (sum(1 << i for i in combo) for combo in combinations(range(n), d)),
            dtype=np.int64,
        )
        masks.sort()
        masks.flags.writeable = False
        cached = _mask_cache[key] = masks
    return cached


def neighbors_at_distance(g: int, n: int, d: int) -> np.ndarray:
    """All C(n, d) genotypes at Hamming distance exactly d from g.

    Ordered by ascending flip mask (not by genotype value).
    """
    return distance_masks(n, d) ^ g


_flat_cache: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def flat_masks(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All nonzero n-bit masks grouped by popcount, as (masks, lo, hi).

    masks[lo[d]:hi[d]] are the distance-d masks in ascending order; layout
    consumed by the compiled walk kernel.
    """
    check_length(n)
    cached = _flat_cache.get(n)
    if cached is None:
        parts = [distance_masks(n, d) for d in range(1, n + 1)]
        lo = np.zeros(n + 1, dtype=np.int64)
        hi = np.zeros(n + 1, dtype=np.int64)
        pos = 0
        for d, part in enumerate(parts, start=1):
            lo[d] = pos
            pos += part.size
            hi[d] = pos
        masks = np.concatenate(parts)
        masks.flags.writeable = False
        cached = _flat_cache[n] = (masks, lo, hi)
    return cached
