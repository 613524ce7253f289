import numpy as np
import pytest

from limax import (
    Problem,
    build_network,
    count_local_optima,
    los,
    los_table,
    nk_generate,
    node_aggregates,
    plf,
    plf_table,
    pull_value_table,
    pull_values,
    run_all_walks,
)
from limax.network import NodeAggregates


def agg(in_degree=0, out_degree=0, in_step=0.0, out_step=0.0, in_inv=0.0, out_inv=0.0,
        in_max=0, in_avg=0.0, in_mode=0, out_min=0, out_avg=0.0, out_mode=0):
    viscosity = (in_inv / out_inv) if out_inv > 0 else in_inv
    return NodeAggregates(
        in_degree=in_degree, out_degree=out_degree,
        in_step_strength=in_step, out_step_strength=out_step,
        in_invstep_strength=in_inv, out_invstep_strength=out_inv,
        viscosity=viscosity if in_degree else 0.0,
        is_source=in_degree == 0, is_sink=out_degree == 0,
        in_max=in_max, in_avg=in_avg, in_mode=in_mode,
        out_min=out_min, out_avg=out_avg, out_mode=out_mode,
    )


def test_plf_extremes_on_onemax():
    p = Problem.onemax(6)
    assert plf(p, 0b111111) == 1.0
    assert plf(p, 0b000000) == 0.0
    assert plf(p, 0b000111) == 0.5


def test_plf_table_matches_scalar():
    p = Problem.from_nk(nk_generate(7, 3, 44))
    table = plf_table(p)
    assert all(table[g] == plf(p, g) for g in range(p.size))


def test_los_tabled_examples():
    # three realistic node profiles with known scores
    assert los(agg(in_degree=1, out_degree=1, in_max=4, in_avg=2.3808, in_mode=2,
                   out_min=4, out_avg=4, out_mode=4)) == pytest.approx(3.6192, abs=5e-5)
    assert los(agg(in_degree=1, out_degree=1, in_max=3, in_avg=1.5016, in_mode=1,
                   out_min=2, out_avg=2, out_mode=2)) == pytest.approx(1.4984, abs=5e-5)
    assert los(agg(in_degree=1, out_degree=1, in_max=1, in_avg=1, in_mode=1,
                   out_min=3, out_avg=3, out_mode=3)) == pytest.approx(6.0, abs=5e-5)


def test_los_sentinels():
    assert los(agg()) == 0.0  # never entered
    assert los(agg(in_degree=2, in_max=1, in_avg=1, in_mode=1)) == 7.0  # never left


def test_los_table_matches_scalar():
    p = Problem.from_nk(nk_generate(8, 3, 60))
    stats = node_aggregates(build_network(run_all_walks(p, 14)))
    table = los_table(stats)
    assert all(table[g] == los(stats[g]) for g in range(p.size))


def test_pull_values_tabled_examples():
    a = pull_values(agg(in_degree=5055, out_degree=5056, in_step=12035.0, out_step=20224.0,
                        in_inv=2401.17, out_inv=1264.0))
    assert a.pull_degree == pytest.approx(0.9998, abs=5e-5)
    assert a.pull_step_strength == pytest.approx(0.5951, abs=5e-5)
    assert a.pull_invstep_strength == pytest.approx(1.8997, abs=5e-5)
    b = pull_values(agg(in_degree=195, out_degree=196, in_step=195.0, out_step=588.0,
                        in_inv=195.0, out_inv=196 / 3))
    assert b.pull_degree == pytest.approx(0.9949, abs=5e-5)
    assert b.pull_step_strength == pytest.approx(0.3316, abs=5e-5)
    assert b.pull_invstep_strength == pytest.approx(2.9847, abs=5e-5)


def test_pull_values_source_and_trapped():
    assert pull_values(agg()) == pull_values(agg(out_degree=3, out_min=1, out_avg=1, out_mode=1))
    assert pull_values(agg()).pull_degree == 0.0
    trapped = pull_values(agg(in_degree=7, in_step=9.0, in_inv=5.5, in_max=2, in_avg=9 / 7, in_mode=1))
    assert trapped.pull_degree == 7.0
    assert trapped.pull_step_strength == 9.0
    assert trapped.pull_invstep_strength == 5.5


def test_pull_value_table_matches_scalar():
    p = Problem.from_nk(nk_generate(7, 2, 13))
    stats = node_aggregates(build_network(run_all_walks(p, 6)))
    for measure, pick in (
        ("degree", lambda pv: pv.pull_degree),
        ("step_strength", lambda pv: pv.pull_step_strength),
        ("invstep_strength", lambda pv: pv.pull_invstep_strength),
    ):
        table = pull_value_table(stats, measure)
        assert all(table[g] == pick(pull_values(stats[g])) for g in range(p.size))
    assert np.array_equal(pull_value_table(stats, "invstep_strength"), stats.viscosity)


def test_pull_value_table_rejects_unknown_measure():
    p = Problem.from_nk(nk_generate(5, 1, 1))
    stats = node_aggregates(build_network(run_all_walks(p, 1)))
    with pytest.raises(ValueError):
        pull_value_table(stats, "betweenness")


class SyntheticStats:
    """Minimal NodeStatsTable stand-in for sequence-evaluation tests."""

    def __init__(self, pull):
        self.pull = np.asarray(pull, dtype=np.float64)

    def __len__(self):
        return self.pull.size


def run_eval(pull, ref_by_node, reference, monkeypatch, measure="degree", optima=()):
    import limax.localopt as lo

    stats = SyntheticStats(pull)
    monkeypatch.setattr(lo, "pull_value_table", lambda s, m: s.pull)
    ref = np.asarray(ref_by_node, dtype=np.float64)
    plf_vals = (ref > 0).astype(np.float64)
    return lo.evaluate_pull_measure(stats, plf_vals, ref, optima, measure, reference)


def test_ideal_pull_order_scores_zero(monkeypatch):
    # pull values rank all reference-positive nodes first
    result = run_eval(
        pull=[9.0, 8.0, 7.0, 6.0],
        ref_by_node=[3.0, 2.0, 0.0, 0.0],
        reference="los",
        monkeypatch=monkeypatch,
    )
    assert result.false_positives == 0
    assert result.error_rate == 0.0
    assert result.edit_distance == 0
    assert result.rank_distance == 0.0


def test_interleaved_zero_counts_as_false_positive(monkeypatch):
    # pull order yields reference sequence <3, 0, 2, 1>
    result = run_eval(
        pull=[9.0, 8.0, 7.0, 6.0],
        ref_by_node=[3.0, 0.0, 2.0, 1.0],
        reference="los",
        monkeypatch=monkeypatch,
    )
    assert result.false_positives == 1
    assert result.error_rate == 1 / 4
    assert result.edit_distance == 0
    assert result.rank_distance == 0.0


def test_rank_displacement_measured(monkeypatch):
    # pull order yields <2, 3, 1>: ideal is <3, 2, 1>
    result = run_eval(
        pull=[9.0, 8.0, 7.0],
        ref_by_node=[2.0, 3.0, 1.0],
        reference="los",
        monkeypatch=monkeypatch,
    )
    assert result.false_positives == 0
    assert result.edit_distance == 2
    assert result.rank_distance == 2.0


def test_step_strength_sorts_ascending(monkeypatch):
    # smallest pull-step-strength first: order is node2, node1, node0
    result = run_eval(
        pull=[9.0, 8.0, 7.0],
        ref_by_node=[0.0, 2.0, 3.0],
        reference="los",
        monkeypatch=monkeypatch,
        measure="step_strength",
    )
    assert result.false_positives == 0
    assert result.edit_distance == 0


def test_plf_reference_binarizes(monkeypatch):
    result = run_eval(
        pull=[9.0, 8.0, 7.0, 6.0],
        ref_by_node=[5.0, 0.0, 0.25, 0.0],
        reference="plf",
        monkeypatch=monkeypatch,
    )
    # plf reference marks only exact 1.0 as positive; ref>0 binarization in
    # the harness maps 5.0 and 0.25 to 1.0
    assert result.false_positives == 1
    assert result.edit_distance is None
    assert result.rank_distance is None


def test_zero_pull_and_optimum_filtered(monkeypatch):
    result = run_eval(
        pull=[5.0, 0.0, 3.0, 1.0],
        ref_by_node=[1.0, 1.0, 0.0, 1.0],
        reference="plf",
        monkeypatch=monkeypatch,
        optima=(0,),
    )
    # node0 excluded (optimum), node1 excluded (zero pull): order 2, 3
    assert result.evaluated_nodes == 2
    assert result.false_positives == 1


def test_degenerate_empty_pool(monkeypatch):
    result = run_eval(
        pull=[0.0, 0.0],
        ref_by_node=[1.0, 0.0],
        reference="los",
        monkeypatch=monkeypatch,
    )
    assert result.degenerate
    assert result.false_positives == 0


def test_count_local_optima_onemax():
    p = Problem.onemax(10)
    stats = node_aggregates(build_network(run_all_walks(p, 4)))
    counts = count_local_optima(p, stats)
    assert counts.plf_count == 1
    assert counts.los_count == 1  # the optimum's trapped sentinel
    assert counts.difference == 0
    assert counts.mean_plf_of_los_positive == 1.0


def test_los_positive_nodes_are_plf_optima_on_nk():
    for seed in (101, 202):
        p = Problem.from_nk(nk_generate(10, 3, seed))
        stats = node_aggregates(build_network(run_all_walks(p, seed)))
        plf_vals = plf_table(p)
        los_vals = los_table(stats)
        positives = np.flatnonzero(los_vals > 0)
        assert positives.size > 0
        assert np.all(plf_vals[positives] == 1.0)
        counts = count_local_optima(p, stats)
        assert counts.plf_count >= counts.los_count
        assert counts.difference >= 0


def test_global_optimum_is_plf_optimum_with_trapped_los():
    p = Problem.from_nk(nk_generate(9, 2, 300))
    optimum = p.global_optima().pop()
    stats = node_aggregates(build_network(run_all_walks(p, 11)))
    assert plf(p, optimum) == 1.0
    assert stats[optimum].out_degree == 0
    assert los(stats[optimum]) == 7.0
