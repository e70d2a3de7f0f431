import numpy as np
import pytest

import oracles
from conftest import S4, complete
from netflatten.centrality import MEASURES
from netflatten.generators import generate
from netflatten.graph import GraphError, from_edge_list, is_connected, isolate_nodes
from netflatten.isolation import ThresholdUnreachable, iter_isolations, scenario1, scenario2


@pytest.fixture(scope="module")
def hk300():
    return generate("hk", 300, 4, 1, 11)


def test_complete_graph_fraction():
    g = from_edge_list(complete(10))
    for measure in MEASURES:
        rep = scenario1(g, measure, 0.2, None, 0)
        assert rep.isolated_count == 2
        assert rep.curve_after.counts.tolist() == [1, 7]
        assert rep.plan.targets == [0, 1]


def test_fifty_isolations_at_five_percent():
    g = generate("ba", 1000, 4, None, 1)
    rep = scenario1(g, "degree", 0.05, 50, 1)
    assert rep.isolated_count == 50
    assert len(set(rep.plan.targets)) == 50
    assert not set(rep.plan.targets) & set(rep.plan.skipped)


def test_tiny_fraction_is_identity(hk300):
    rep = scenario1(hk300, "degree", 0.001, None, 0)
    assert rep.isolated_count == 0
    assert np.array_equal(rep.curve_before.counts, rep.curve_after.counts)
    assert rep.peak_drop == 1.0


def test_would_empty_graph():
    with pytest.raises(GraphError, match="empty graph"):
        scenario1(from_edge_list(complete(4)), "degree", 0.9, None, 0)


def test_fraction_bounds(hk300):
    for bad in (0, 1, 1.5):
        with pytest.raises(GraphError):
            scenario1(hk300, "degree", bad, None, 0)


def test_disconnected_start():
    g = from_edge_list([(0, 1), (2, 3)])
    with pytest.raises(GraphError):
        scenario1(g, "degree", 0.25, None, 0)


@pytest.mark.parametrize("measure", MEASURES)
def test_plan_keeps_connectivity(hk300, measure):
    rep = scenario1(hk300, measure, 0.1, 40, 3)
    g = isolate_nodes(hk300, rep.plan.targets)
    assert is_connected(g)
    assert rep.curve_after.n_unreachable == 0
    assert rep.mean_distance_change >= 0


def test_skip_and_substitute():
    # node 0 is the hub of a star with a tail; isolating it strands the leaves
    edges = S4 + [(4, 5), (5, 6), (6, 4), (1, 2)]
    g = from_edge_list(edges)
    steps = list(iter_isolations(g, "degree"))
    first_node, _, skipped = steps[0]
    assert 0 in skipped
    assert first_node != 0
    for _, h, _ in steps:
        assert is_connected(h)


def test_sources_shared_and_surviving(hk300):
    rep = scenario1(hk300, "betweenness", 0.05, 25, 8)
    assert rep.n_sources == 25
    assert rep.curve_before.source_info == rep.curve_after.source_info


@pytest.mark.parametrize("seed", range(5))
def test_mean_distance_never_drops(seed):
    edges = oracles.random_connected(60, 90, seed)
    g = from_edge_list(edges)
    rep = scenario1(g, "closeness", 0.1, None, seed)
    assert rep.curve_after.mean_distance() >= rep.curve_before.mean_distance()


def test_recompute_flag(hk300):
    static = scenario1(hk300, "degree", 0.05, 30, 1)
    adaptive = scenario1(hk300, "degree", 0.05, 30, 1, recompute=True)
    assert adaptive.isolated_count == static.isolated_count
    assert is_connected(isolate_nodes(hk300, adaptive.plan.targets))


def test_threshold_one_needs_nothing(hk300):
    rep = scenario2(hk300, "degree", 1.0, 50, 0)
    assert rep.isolated_count == 0


def test_threshold_unreachable_on_star():
    with pytest.raises(ThresholdUnreachable) as info:
        scenario2(from_edge_list(S4), "degree", 0.5, None, 0)
    assert 0 in info.value.report.plan.skipped
    assert info.value.report.isolated_count == 2


def test_threshold_reached(hk300):
    rep = scenario2(hk300, "degree", 0.6, 60, 2)
    assert rep.peak_drop <= 0.6
    assert rep.isolated_count > 0
    assert is_connected(isolate_nodes(hk300, rep.plan.targets))


def test_threshold_count_monotone(hk300):
    counts = [scenario2(hk300, "degree", t, 60, 4).isolated_count for t in (0.55, 0.7, 0.85, 1.0)]
    assert counts == sorted(counts, reverse=True)


def test_report_dict(hk300):
    d = scenario1(hk300, "pagerank", 0.05, 20, 0).as_dict()
    assert d["isolated_count"] == 15
    assert d["plan"]["measure"] == "pagerank"
    assert set(d) >= {"curve_before", "curve_after", "gamma_before", "gamma_after", "peak_drop"}
