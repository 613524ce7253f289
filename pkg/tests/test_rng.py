import pytest

from limax.rng import SplitMix64, mix64


def test_streams_reproducible():
    a = SplitMix64(12345)
    b = SplitMix64(12345)
    assert [a.next_u64() for _ in range(10)] == [b.next_u64() for _ in range(10)]


def test_seed_changes_stream():
    assert SplitMix64(1).next_u64() != SplitMix64(2).next_u64()


def test_mix64_order_and_arity_sensitive():
    assert mix64(1, 2) != mix64(2, 1)
    assert mix64(1) != mix64(1, 0)
    assert mix64(7, 9) == mix64(7, 9)


def test_mix64_handles_negative_and_huge_values():
    assert 0 <= mix64(-5, 1 << 80) < 1 << 64


def test_uniform_in_unit_interval():
    rng = SplitMix64(99)
    values = [rng.uniform() for _ in range(1000)]
    assert all(0.0 <= v < 1.0 for v in values)
    assert 0.4 < sum(values) / len(values) < 0.6


def test_randrange_bounds_and_coverage():
    rng = SplitMix64(5)
    draws = [rng.randrange(7) for _ in range(2000)]
    assert set(draws) == set(range(7))


def test_randrange_one_consumes_a_draw():
    a = SplitMix64(42)
    b = SplitMix64(42)
    a.randrange(1)
    b.next_u64()
    assert a.next_u64() == b.next_u64()


def test_randrange_rejects_nonpositive():
    with pytest.raises(ValueError):
        SplitMix64(0).randrange(0)


def test_sample_without_replacement():
    rng = SplitMix64(3)
    picked = rng.sample(list(range(20)), 8)
    assert len(picked) == 8
    assert len(set(picked)) == 8
    assert all(0 <= v < 20 for v in picked)
    with pytest.raises(ValueError):
        rng.sample([1, 2], 3)
