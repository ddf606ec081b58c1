import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import hyperlap as hl
from hyperlap import corpus
from hyperlap.hypergraph import HypergraphError
from hyperlap.operator import markov_apply_harmonic
from hyperlap.seeding import rng_for

H3 = hl.build(3, [(0, 1, 2)])


def test_support_graph_tie_example():
    sg = hl.support_graph(H3, np.array([2.0, -1.0, -1.0]))
    pairs = sorted((i, j, w) for i, j, w in sg.pairs)
    assert pairs == [(0, 1, 0.5), (0, 2, 0.5)]
    np.testing.assert_allclose(sg.self_loops, [0.0, 0.5, 0.5])
    assert sg.tie_sets == [((0,), (1, 2))]


def test_support_graph_2_uniform_is_the_edge():
    H = hl.build(2, [(0, 1)])
    sg = hl.support_graph(H, np.array([3.0, -1.0]))
    assert sg.pairs == [(0, 1, 1.0)]
    np.testing.assert_allclose(sg.self_loops, [0.0, 0.0])


def test_support_graph_constant_is_identity():
    sg = hl.support_graph(H3, np.ones(3))
    assert sg.pairs == []
    np.testing.assert_allclose(sg.walk_matrix(), np.eye(3))


def test_support_graph_degree_invariant():
    for t in range(20):
        H = corpus.random_hypergraph(rng_for(11, t), weighted=True,
                                     require_connected=False, max_configs=None)
        X = rng_for(12, t).standard_normal(H.n)
        sg = hl.support_graph(H, X)
        G = sg.adjacency()
        np.testing.assert_allclose(G.sum(axis=1), H.degrees, atol=1e-9)
        assert np.all(sg.self_loops >= 0)


def test_walk_matrix_fixes_stationary():
    for t in range(20):
        H = corpus.random_hypergraph(rng_for(13, t), weighted=(t % 2 == 0),
                                     require_connected=False, max_configs=None)
        X = rng_for(14, t).standard_normal(H.n)
        A = hl.support_graph(H, X).walk_matrix()
        mu = hl.stationary_distribution(H)
        np.testing.assert_allclose(A @ mu, mu, atol=1e-12)
        # column-stochastic: mass conservation for any input
        np.testing.assert_allclose(A.sum(axis=0), np.ones(H.n), atol=1e-12)


def test_sym_matrix_shares_spectrum_with_walk_matrix():
    for t in range(10):
        H = corpus.random_hypergraph(rng_for(15, t), weighted=True,
                                     require_connected=False, max_configs=None)
        X = rng_for(16, t).standard_normal(H.n)
        sg = hl.support_graph(H, X)
        spec_walk = np.sort(np.linalg.eigvals(sg.walk_matrix()).real)
        spec_sym = np.sort(np.linalg.eigvalsh(sg.sym_matrix()))
        np.testing.assert_allclose(spec_walk, spec_sym, atol=1e-9)


def test_markov_apply_examples():
    np.testing.assert_allclose(hl.markov_apply(H3, np.ones(3)), np.ones(3))
    np.testing.assert_allclose(hl.markov_apply(H3, np.array([1.0, 0, 0])),
                               [0.0, 0.5, 0.5])


def test_markov_apply_graph_case_is_linear():
    for t in range(10):
        H = corpus.random_graph_2uniform(rng_for(17, t), n_range=(4, 8))
        A = np.zeros((H.n, H.n))
        for (u, v), w in zip(H.edges, H.weights):
            A[u, v] += w
            A[v, u] += w
        walk = A / H.degrees[None, :]
        X = rng_for(18, t).standard_normal(H.n)
        np.testing.assert_allclose(hl.markov_apply(H, X), walk @ X, atol=1e-12)


def test_markov_apply_matches_support_graph():
    for t in range(15):
        H = corpus.random_hypergraph(rng_for(19, t), weighted=True,
                                     require_connected=False, max_configs=None)
        X = rng_for(20, t).standard_normal((3, H.n))
        batched = hl.markov_apply(H, X)
        for row in range(3):
            sg = hl.support_graph(H, X[row])
            np.testing.assert_allclose(batched[row], sg.apply(X[row]), atol=1e-12)


def test_laplacian_and_rayleigh_examples():
    X = np.array([1.0, 0.0, -1.0])
    np.testing.assert_allclose(hl.laplacian_apply(H3, X), 2 * X)
    assert hl.rayleigh(H3, X) == pytest.approx(2.0)
    assert hl.rayleigh(H3, np.array([2.0, -1.0, -1.0])) == pytest.approx(1.5)
    assert hl.rayleigh(H3, np.ones(3)) == 0.0


def test_rayleigh_errors():
    with pytest.raises(HypergraphError):
        hl.rayleigh(H3, np.zeros(3))
    with pytest.raises(HypergraphError):
        hl.support_graph(H3, np.ones(3), eps_tie=-1.0)


def test_rayleigh_equals_operator_form_on_regular():
    # regular + centered: X^T L(X) / X^T X equals the max-pair form
    for name, H in corpus.regular_instances():
        if H.n < 3:
            continue
        X = rng_for(21, H.n).standard_normal(H.n)
        X -= X.mean()
        op_form = float(X @ hl.laplacian_apply(H, X)) / float(X @ X)
        assert hl.rayleigh(H, X) == pytest.approx(op_form, abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, 5, elements=st.floats(-10, 10)))
def test_rayleigh_in_unit_interval_times_two(X):
    H = hl.build(5, [(0, 1, 2), (2, 3, 4), (1, 3)])
    if np.allclose(X, 0):
        return
    assert -1e-12 <= hl.rayleigh(H, X) <= 2.0 + 1e-12


def test_support_invariant_under_positive_affine_maps():
    for t in range(15):
        H = corpus.random_hypergraph(rng_for(22, t), require_connected=False,
                                     max_configs=None)
        X = rng_for(23, t).standard_normal(H.n)
        base = hl.support_signature(H, X)
        assert hl.support_signature(H, 2.5 * X + 7.0) == base


def test_harmonic_apply_transposes_walk():
    for t in range(10):
        H = corpus.random_hypergraph(rng_for(24, t), weighted=True,
                                     require_connected=False, max_configs=None)
        Y = rng_for(25, t).standard_normal(H.n)
        sg = hl.support_graph(H, Y)
        expected = sg.adjacency() @ Y / H.degrees
        np.testing.assert_allclose(markov_apply_harmonic(H, Y), expected,
                                   atol=1e-12)


def test_lazy_power_support_is_bfs_ball():
    H = hl.build(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    chi = np.zeros(5)
    chi[0] = 1.0
    for t in range(1, 5):
        reach = hl.markov_power(H, chi, t, lazy=True)
        ball = set(range(min(t + 1, 5)))
        assert set(int(v) for v in np.nonzero(reach > 1e-15)[0]) == ball
