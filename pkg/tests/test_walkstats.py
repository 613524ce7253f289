import math

import pytest

from limax import Problem, Walk, aggregate_walkset, compress, run_all_walks, walk_metrics
from limax.walkstats import compute_all_metrics


def fake_walk(steps):
    # destinations are irrelevant for step statistics
    return Walk(start=0, moves=tuple((i + 1, s) for i, s in enumerate(steps)))


def test_compress_worked_example():
    assert compress([1, 1, 2, 3, 2, 2, 2, 5]) == [1, 2, 3, 2, 5]


def test_compress_trivial_cases():
    assert compress([2, 2, 2]) == [2]
    assert compress([]) == []


def test_walk_metrics_worked_example():
    m = walk_metrics(fake_walk([1, 1, 2, 3, 2, 2, 2, 5]))
    assert m.wlen == 8
    assert m.cwlen == 5
    assert m.cr1 == 5 / 8
    assert m.wdist == 18
    assert m.cwdist == 13
    assert m.cr2 == 13 / 18
    assert m.wvar == 4
    assert m.adaptive_length == 3
    assert m.step_range == 4
    assert m.hierarchical is False


def test_walk_metrics_hierarchical():
    m = walk_metrics(fake_walk([1, 2, 4]))
    assert m.hierarchical is True
    assert m.cwlen == 3
    assert m.adaptive_length == 1


def test_single_step_walk_not_hierarchical():
    m = walk_metrics(fake_walk([3]))
    assert m.cwlen == 1
    assert m.hierarchical is False
    assert m.step_range == 0


def test_empty_walk_metrics():
    m = walk_metrics(Walk(start=0, moves=()))
    assert m.wlen == 0 and m.cwlen == 0 and m.wdist == 0 and m.cwdist == 0
    assert math.isnan(m.cr1) and math.isnan(m.cr2)
    assert m.wvar == 0 and m.adaptive_length == 0 and m.hierarchical is False


def test_metric_invariants_on_real_walks():
    from limax import nk_generate

    p = Problem.from_nk(nk_generate(8, 4, 321))
    ws = run_all_walks(p, 17)
    for m in compute_all_metrics(ws):
        assert m.cwlen <= m.wlen
        assert m.cwdist <= m.wdist
        if m.wlen > 0:
            assert 0 < m.cr1 <= 1
            assert 0 < m.cr2 <= 1
            assert m.wvar <= m.cwlen
            assert m.adaptive_length <= m.wlen
            assert m.step_range >= 0
        if m.hierarchical:
            assert m.cwlen > 1


def test_wdist_at_least_start_terminal_hamming():
    from limax import nk_generate
    from limax.bits import hamming

    p = Problem.from_nk(nk_generate(9, 3, 65))
    ws = run_all_walks(p, 8)
    for w in ws.walks:
        assert sum(w.steps) >= hamming(w.start, w.terminal)


def test_aggregate_onemax_walkset():
    ws = run_all_walks(Problem.onemax(14), master_seed=77)
    summary = aggregate_walkset(ws)
    assert summary.whier == 0.0
    assert summary.wdist.mean == 7.0
    assert summary.wvar.mean == 1.0  # only walks with moves count
    assert summary.mean_step_size == 1.0
    assert summary.total_moves == 114688
    assert summary.max_adaptive_length == 14


def test_aggregate_single_empty_walk():
    ws = run_all_walks(Problem.onemax(1), master_seed=1)
    # walks: 0 -> 1 (one move), and the empty walk at the optimum
    summary = aggregate_walkset(ws)
    assert summary.walk_count == 2
    assert summary.whier == 0.0
    assert summary.cr1 is not None
    one_node = aggregate_walkset(
        type(ws)(problem_id="x", n=0, master_seed=0, max_step=None,
                 walks=[Walk(start=0, moves=())])
    )
    assert one_node.cr1 is None and one_node.wvar is None
    assert one_node.whier == 0.0
    assert one_node.max_adaptive_length == 0


def test_aggregate_requires_matching_metrics():
    ws = run_all_walks(Problem.onemax(3), master_seed=5)
    with pytest.raises(ValueError):
        aggregate_walkset(ws, metrics=[])
