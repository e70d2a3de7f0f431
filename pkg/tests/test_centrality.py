import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import C5, C6, K4, P3, S4, complete
from netflatten import centrality as C
from netflatten.graph import Graph, GraphError, from_edge_list, isolate_node


def test_degree():
    assert C.degree(from_edge_list(S4)).scores[0] == 4
    assert C.degree(from_edge_list(K4)).scores.tolist() == [3, 3, 3, 3]
    assert C.degree(from_edge_list(P3)).scores.tolist() == [1, 2, 1]


def test_betweenness_small():
    assert C.betweenness(from_edge_list(P3)).scores.tolist() == [0.0, 1.0, 0.0]
    assert C.betweenness(from_edge_list(S4)).scores[0] == 6.0


def test_betweenness_disconnected_pairs_ignored():
    g = from_edge_list([(0, 1), (1, 2), (3, 4), (4, 5)])
    assert C.betweenness(g).scores.tolist() == [0, 1, 0, 0, 1, 0]


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 30), st.integers(0, 40), st.integers(0, 2**32 - 1))
def test_betweenness_matches_path_enumeration(n, extra, seed):
    edges = oracles.random_connected(n, extra, seed)
    got = C.betweenness(from_edge_list(edges, n=n), block_size=7).scores
    assert got == pytest.approx(oracles.betweenness(n, edges), abs=1e-9)


def test_closeness():
    s = C.closeness(from_edge_list(S4)).scores
    assert s[0] == 1.0
    assert s[1] == pytest.approx(4 / 7)
    assert C.closeness(from_edge_list(P3)).scores.tolist() == pytest.approx([2 / 3, 1, 2 / 3])


def test_closeness_disconnected():
    with pytest.raises(GraphError, match="component"):
        C.closeness(from_edge_list([(0, 1), (2, 3)]))


def test_katz_empty_graph():
    g = Graph(3, [[], [], []])
    assert C.katz(g, 0.3).scores.tolist() == [0, 0, 0]


def test_katz_path():
    s = C.katz(from_edge_list(P3), 0.1).scores
    assert s[1] > s[0]
    # (I - 0.1 A)^-1 1 - 1, exact rational values
    assert s == pytest.approx([6 / 49, 11 / 49, 6 / 49], abs=1e-10)


def test_katz_matches_dense_series():
    edges = oracles.random_connected(25, 30, 5)
    g = from_edge_list(edges)
    A = np.zeros((25, 25))
    for a, b in edges:
        A[a, b] = A[b, a] = 1
    kappa = 0.05
    term = np.ones(25)
    total = np.zeros(25)
    for _ in range(400):
        term = kappa * A @ term
        total += term
    assert C.katz(g, kappa).scores == pytest.approx(total, abs=1e-9)


def test_katz_divergent():
    with pytest.raises(GraphError, match="katz divergent"):
        C.katz(from_edge_list(K4), 0.5)


def test_spectral_radius_bipartite():
    # the path is bipartite: +-sqrt(2) compete without the shift
    assert C.spectral_radius(from_edge_list(P3)) == pytest.approx(math.sqrt(2), abs=1e-8)
    assert C.spectral_radius(from_edge_list(C6)) == pytest.approx(2.0, abs=1e-8)


def test_katz_geometric_convergence():
    g = from_edge_list(oracles.random_connected(30, 40, 11))
    kappa = 0.05
    ratio = kappa * C.spectral_radius(g)
    A = g.to_csr()
    x = np.zeros(g.n)
    # the t-th increment is kappa^t A^t 1, whose 2-norm is at most sqrt(n) (kappa lambda)^t
    for t in range(1, 20):
        x_new = kappa * (A @ (1 + x))
        assert np.abs(x_new - x).max() <= math.sqrt(g.n) * ratio**t + 1e-15
        x = x_new


def test_pagerank_symmetric():
    assert C.pagerank(from_edge_list(C5)).scores == pytest.approx([0.2] * 5, abs=1e-12)
    assert C.pagerank(from_edge_list(K4)).scores == pytest.approx([0.25] * 4, abs=1e-12)


def test_pagerank_star_two_class_system():
    # c = 0.15/5 + 0.85*4*l ; l = 0.15/5 + 0.85*c/4
    s = C.pagerank(from_edge_list(S4), 0.85).scores
    assert s[0] == pytest.approx(0.47567567567567567568, abs=1e-9)
    assert s[1:] == pytest.approx([0.13108108108108108108] * 4, abs=1e-9)


def test_pagerank_isolated_active_node():
    g = Graph(4, [[1], [0, 2], [1], []])
    s = C.pagerank(g).scores
    assert s.sum() == pytest.approx(1.0, abs=1e-12)
    assert (s > 0).all()


def test_pagerank_bad_damping():
    with pytest.raises(GraphError):
        C.pagerank(from_edge_list(P3), 1.0)


def test_expected_force_star():
    assert C.expected_force(from_edge_list(S4), 0) == pytest.approx(math.log(6))


def test_expected_force_path_middle_is_zero():
    assert C.expected_force(from_edge_list(P3), 1) == 0.0


def test_expected_force_needs_degree():
    with pytest.raises(GraphError):
        C.expected_force(Graph(2, [[], []]), 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 30), st.integers(0, 50), st.integers(0, 2**32 - 1))
def test_expected_force_matches_enumeration(n, extra, seed):
    edges = oracles.random_connected(n, extra, seed)
    scores = C.expected_force_all(from_edge_list(edges, n=n)).scores
    want = [oracles.expected_force(n, edges, i) for i in range(n)]
    assert scores == pytest.approx(want, abs=1e-9)


@pytest.mark.parametrize("edges", [C5, C6, K4, complete(6)])
@pytest.mark.parametrize("measure", C.MEASURES)
def test_vertex_transitive_constant(edges, measure):
    s = C.compute(from_edge_list(edges), measure).scores
    assert np.ptp(s) < 1e-9


@settings(max_examples=15, deadline=None)
@given(st.integers(3, 40), st.integers(0, 60), st.integers(0, 2**32 - 1), st.sampled_from(C.MEASURES))
def test_relabeling_equivariance(n, extra, seed, measure):
    edges = oracles.random_connected(n, extra, seed)
    perm = np.random.default_rng(seed).permutation(n)
    relabeled = [(int(perm[a]), int(perm[b])) for a, b in edges]
    s = C.compute(from_edge_list(edges, n=n), measure).scores
    t = C.compute(from_edge_list(relabeled, n=n), measure).scores
    assert t[perm] == pytest.approx(s, rel=1e-7, abs=1e-9)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 40), st.integers(0, 60), st.integers(0, 2**32 - 1))
def test_pagerank_is_probability_vector(n, extra, seed):
    s = C.pagerank(from_edge_list(oracles.random_connected(n, extra, seed), n=n)).scores
    assert (s >= 0).all()
    assert s.sum() == pytest.approx(1.0, abs=1e-9)


def test_inactive_nodes_score_zero():
    g = isolate_node(from_edge_list(complete(5)), 2)
    for measure in C.MEASURES:
        scores = C.compute(g, measure)
        assert scores.scores[2] == 0.0
        assert 2 not in C.ranking(scores)
        assert np.isfinite(scores.scores).all()


def test_rank_top():
    assert C.rank_top(C.degree(from_edge_list(S4)), 1) == [0]
    assert C.rank_top(C.degree(from_edge_list(K4)), 2) == [0, 1]
    assert C.rank_top(C.closeness(from_edge_list(P3)), 1) == [1]
    assert C.rank_top(C.pagerank(from_edge_list(K4)), 4) == [0, 1, 2, 3]


def test_rank_top_bad_k():
    s = C.degree(from_edge_list(P3))
    with pytest.raises(GraphError):
        C.rank_top(s, 0)
    with pytest.raises(GraphError):
        C.rank_top(s, 4)
