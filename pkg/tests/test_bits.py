import math

import numpy as np
import pytest

from limax.bits import (
    complement,
    distance_masks,
    flat_masks,
    hamming,
    neighbors_at_distance,
    popcount_array,
)


def test_hamming_basics():
    assert hamming(0b000, 0b000) == 0
    assert hamming(0b101, 0b010) == 3
    assert hamming(17404, 17404) == 0


def test_complement():
    assert complement(0b0000, 4) == 0b1111
    assert complement(0b1010, 4) == 0b0101


def test_neighbors_at_distance_one():
    got = neighbors_at_distance(0b000, 3, 1)
    assert got.tolist() == [0b001, 0b010, 0b100]


def test_neighbors_at_distance_full_flip():
    assert neighbors_at_distance(0b000, 3, 3).tolist() == [0b111]


def test_neighbors_counting_identity():
    # every other genotype appears at exactly one distance
    n = 6
    g = 0b101100
    seen = []
    for d in range(1, n + 1):
        nbrs = neighbors_at_distance(g, n, d)
        assert len(nbrs) == math.comb(n, d)
        assert all(hamming(int(x), g) == d for x in nbrs)
        seen.extend(int(x) for x in nbrs)
    assert len(seen) == 2**n - 1
    assert len(set(seen)) == 2**n - 1


def test_distance_masks_ascending_and_immutable():
    masks = distance_masks(5, 2)
    assert np.all(np.diff(masks) > 0)
    with pytest.raises(ValueError):
        masks[0] = 99


def test_distance_out_of_range():
    with pytest.raises(ValueError):
        distance_masks(4, 0)
    with pytest.raises(ValueError):
        distance_masks(4, 5)
    with pytest.raises(ValueError):
        distance_masks(25, 1)


def test_flat_masks_layout_matches_grouped():
    n = 7
    masks, lo, hi = flat_masks(n)
    assert masks.size == 2**n - 1
    for d in range(1, n + 1):
        assert masks[lo[d]:hi[d]].tolist() == distance_masks(n, d).tolist()


def test_popcount_array_matches_int_bit_count():
    values = np.arange(1 << 10, dtype=np.int64)
    assert popcount_array(values).tolist() == [v.bit_count() for v in range(1 << 10)]
