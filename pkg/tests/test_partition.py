import itertools
import math

import numpy as np
import pytest

import hyperlap as hl
from hyperlap import corpus
from hyperlap import partition as pt
from hyperlap.hypergraph import HypergraphError
from hyperlap.seeding import rng_for

H3 = hl.build(3, [(0, 1, 2)])


def test_sweep_nonneg_examples():
    cut = pt.sweep_cut_nonneg(H3, np.array([1.0, 0.5, 0.0]))
    assert set(cut.set) == {0, 1}
    assert cut.expansion == pytest.approx(0.5)
    assert cut.ratio_type == "one-sided"
    # indicator input returns the set itself with its exact one-sided ratio
    H = corpus.dumbbell()
    chi = np.zeros(H.n)
    chi[[0, 1, 2, 3]] = 1.0
    cut = pt.sweep_cut_nonneg(H, chi)
    assert set(cut.set) == {0, 1, 2, 3}
    assert cut.expansion == pytest.approx(hl.cut_weight(H, cut.set) / H.volume(cut.set))


def test_sweep_nonneg_errors():
    with pytest.raises(HypergraphError):
        pt.sweep_cut_nonneg(H3, np.array([1.0, -0.1, 0.0]))
    with pytest.raises(HypergraphError):
        pt.sweep_cut_nonneg(H3, np.zeros(3))


def test_sweep_nonneg_averaging_bound_property():
    checked = 0
    for t in range(1000):
        rng = rng_for(51, t)
        H = corpus.random_hypergraph(rng, n_range=(4, 9), m_range=(2, 5),
                                     require_connected=False, max_configs=None)
        Y = np.abs(rng.standard_normal(H.n))
        Y[rng.integers(0, H.n)] = 0.0  # keep a zero so every level is proper
        if not np.any(Y > 0):
            continue
        cut = pt.sweep_cut_nonneg(H, Y)
        bound = sum(w * (Y[list(e)].max() - Y[list(e)].min())
                    for e, w in zip(H.edges, H.weights)) / float(H.degrees @ Y)
        assert cut.expansion <= bound + 1e-9
        checked += 1
    assert checked >= 990


def test_sweep_cut_examples():
    v2 = np.array([2.0, -1.0, -1.0]) / math.sqrt(6)
    cut = pt.sweep_cut(H3, v2)
    assert cut.expansion == pytest.approx(1.0)
    R = hl.rayleigh(H3, v2)
    assert cut.expansion <= R + 2 * math.sqrt(R / 3) + 1e-9
    # disconnected second eigenvector gives a free cut
    H = hl.build(4, [(0, 1), (2, 3)])
    pair = hl.eig_sequence(H, 2, "exact")[1]
    cut = pt.sweep_cut(H, hl.density_scale(H, pair.vector))
    assert cut.expansion == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(HypergraphError):
        pt.sweep_cut(H3, np.ones(3))


def test_sweep_cut_guarantee_property():
    for t in range(60):
        H = corpus.random_hypergraph(rng_for(52, t), weighted=(t % 2 == 0),
                                     require_connected=False, max_configs=None)
        Y = rng_for(53, t).standard_normal(H.n)
        if np.allclose(Y, Y[0]):
            continue
        cut = pt.sweep_cut(H, Y)
        d = H.degrees
        Yc = Y - (d @ Y) / d.sum()
        R = hl.rayleigh(H, Yc)
        assert cut.expansion <= R + 2 * math.sqrt(R / H.r_min) + 1e-9
        # the returned side never exceeds half the volume
        assert H.volume(cut.set) <= H.total_volume / 2 + 1e-9


def test_cheeger_check():
    rep = pt.cheeger_check(hl.build(2, [(0, 1)]), 2.0)
    assert rep.ok and rep.lower == 1.0 and rep.phi == 1.0
    rep3 = pt.cheeger_check(H3, 1.5)
    assert rep3.ok
    assert rep3.lower == pytest.approx(0.75)
    assert rep3.upper == pytest.approx(math.sqrt(3))


def test_orthogonal_separator_basics():
    pts = np.tile(np.array([[1.0, 0.0]]), (5, 1))
    for trial in range(20):
        sel = pt.orthogonal_separator(pts, beta=0.99, m=3, seed=1, trial=trial)
        assert sel in (set(), {0, 1, 2, 3, 4})  # identical points never split
    with pytest.raises(HypergraphError):
        pt.orthogonal_separator(pts * 2.0, beta=0.99, m=3)
    with pytest.raises(HypergraphError):
        pt.orthogonal_separator(pts, beta=0.99, m=1)


def test_orthogonal_separator_frequencies():
    pts = np.eye(4)
    m = 4
    sel = pt.separator_samples(pts, beta=0.99, m=m, seed=7, count=30000)
    freq = sel.mean(axis=0)
    sigma = math.sqrt((1 / m) * (1 - 1 / m) / 30000)
    assert np.all(np.abs(freq - 1 / m) <= 4 * sigma)
    co = float((sel[:, 0] & sel[:, 1]).mean())
    sigma2 = math.sqrt((1 / m ** 2) * (1 - 1 / m ** 2) / 30000)
    assert co <= 1 / m ** 2 + 4 * sigma2


def test_small_set_expansion_disjoint_components():
    H = corpus.planted_clusters(rng_for(54), k=4, cluster_size=4, bridges=0)
    cut = pt.small_set_expansion(H, 4, trials=48, seed=3)
    assert cut.expansion == pytest.approx(0.0, abs=1e-12)
    assert len(cut.set) <= 24 * H.n / 4


def test_small_set_expansion_planted_bridge():
    H = corpus.planted_clusters(rng_for(55), k=6, cluster_size=4, bridges=1)
    cut = pt.small_set_expansion(H, 6, trials=48, seed=4)
    assert cut.expansion <= 1e-9
    with pytest.raises(HypergraphError):
        pt.small_set_expansion(H, 1)


def _exhaustive_partition(H, k):
    n = H.n
    digits = (np.arange(k ** n, dtype=np.int64)[:, None]
              // (k ** np.arange(n))[None, :]) % k
    ok = np.ones(digits.shape[0], dtype=bool)
    for c in range(k):
        ok &= (digits == c).any(axis=1)
    digits = digits[ok]
    deg = H.degrees
    total = deg.sum()
    maxphi = np.zeros(digits.shape[0])
    for c in range(k):
        inside = digits == c
        vol = inside @ deg
        cut = np.zeros(digits.shape[0])
        for e, w in zip(H.edges, H.weights):
            flags = inside[:, list(e)]
            cut += w * (flags.any(axis=1) & ~flags.all(axis=1))
        maxphi = np.maximum(maxphi, cut / np.minimum(vol, total - vol))
    best = int(np.argmin(maxphi))
    return float(maxphi[best]), digits[best]


def test_multi_partition_components():
    H = corpus.planted_clusters(rng_for(56), k=3, cluster_size=4, bridges=0)
    res = pt.multi_partition(H, 3, seed=4, method="iterative")
    assert res.complete
    assert res.max_expansion == pytest.approx(0.0, abs=1e-12)
    assert sorted(v for S in res.sets for v in S) == list(range(H.n))


def test_multi_partition_planted_vs_oracle():
    H = corpus.planted_clusters(rng_for(57), k=3, cluster_size=3, bridges=1)
    oracle_max, _ = _exhaustive_partition(H, 3)
    res = pt.multi_partition(H, 3, seed=5, method="iterative")
    assert res.sets
    flat = [v for S in res.sets for v in S]
    assert len(flat) == len(set(flat))  # disjoint
    assert all(phi <= oracle_max + 1e-9 for phi in res.expansions)


def test_multi_partition_lower_bound():
    # any k disjoint nonempty sets have max expansion >= lambda_k / 2
    for t in range(6):
        H = corpus.random_hypergraph(rng_for(58, t), n_range=(6, 9))
        k = 3
        lam_k = hl.eig_sequence(H, k, "exact")[-1].value
        oracle_max, _ = _exhaustive_partition(H, k)
        assert oracle_max >= lam_k / 2 - 1e-9


def test_clique_expansion_baseline():
    H2 = corpus.cycle_graph(6)
    base = pt.clique_expansion_baseline(H2)
    assert sorted(base.edges) == sorted(H2.edges)  # identity on graphs
    base3 = pt.clique_expansion_baseline(H3)
    assert sorted(base3.edges) == [(0, 1), (0, 2), (1, 2)]
    assert base3.phi_hypergraph <= base3.phi_graph + 1e-12
    # uniform hypergraphs: hyperedge expansion dominated by the clique graph
    H = corpus.circulant_uniform(8, 3)
    rep = pt.clique_expansion_baseline(H)
    assert rep.phi_hypergraph <= rep.phi_graph + 1e-9


def test_demand_instance_validation():
    H = hl.build(3, [(0, 1), (1, 2)])
    with pytest.raises(HypergraphError):
        pt.DemandInstance(hypergraph=H, pairs=())
    with pytest.raises(HypergraphError):
        pt.DemandInstance(hypergraph=H, pairs=((1, 1),))
    with pytest.raises(HypergraphError):
        pt.DemandInstance(hypergraph=H, pairs=((0, 5),))


def test_demands_path_example():
    H = hl.build(3, [(0, 1), (1, 2)])
    inst = pt.DemandInstance(hypergraph=H, pairs=((0, 2),))
    S, best = pt.brute_force_demand_ratio(inst)
    assert best == pytest.approx(1.0)
    res = pt.sparsest_cut_demands(inst, seed=0)
    assert res.ratio == pytest.approx(1.0)
    assert res.sdp_value <= 1.0 + 1e-6
    assert res.ratio >= res.sdp_value - 1e-6


def test_demands_free_cut_across_components():
    H = hl.build(4, [(0, 1), (2, 3)])
    inst = pt.DemandInstance(hypergraph=H, pairs=((0, 2),))
    res = pt.sparsest_cut_demands(inst, seed=1)
    assert res.ratio == pytest.approx(0.0, abs=1e-9)


def test_demands_relaxation_ordering():
    for i, (H, pairs) in enumerate(corpus.demand_instances(seed=7, count=5)):
        inst = pt.DemandInstance(hypergraph=H, pairs=tuple(pairs))
        _, best = pt.brute_force_demand_ratio(inst)
        res = pt.sparsest_cut_demands(inst, seed=i)
        assert res.sdp_value <= best + 1e-5
        assert res.ratio >= res.sdp_value - 1e-6
        assert res.ratio >= best - 1e-9


def test_demands_triangle_inequalities_hold():
    from hyperlap.sdp import solve_demands_sdp

    H = corpus.dumbbell()
    pairs = [(0, 7), (1, 6)]
    _, F = solve_demands_sdp(H, pairs, seed=0)
    d2 = ((F[:, None, :] - F[None, :, :]) ** 2).sum(-1)
    n = H.n
    worst = 0.0
    for u, v, w in itertools.permutations(range(n), 3):
        worst = max(worst, d2[u, w] - d2[u, v] - d2[v, w])
    assert worst <= 1e-6
