import math

import numpy as np
import pytest

import hyperlap as hl
from hyperlap import corpus
from hyperlap.dispersion import (
    DispersionConfig,
    bottleneck_cut,
    mixing_time,
    simulate,
    slow_mixing_distribution,
    step,
)
from hyperlap.hypergraph import HypergraphError
from hyperlap.seeding import rng_for
from hyperlap.spectral import orthonormal_complement

EDGE = hl.build(2, [(0, 1)])


def test_step_fixed_point():
    H = hl.build(5, [(0, 1, 2), (2, 3, 4)])
    mu = hl.stationary_distribution(H)
    out = step(H, mu, DispersionConfig(dt=0.01))
    np.testing.assert_allclose(out, mu, atol=1e-12)


def test_step_single_edge():
    for h in (0.5, 0.1, 0.01):
        out = step(EDGE, np.array([1.0, 0.0]), DispersionConfig(dt=h))
        np.testing.assert_allclose(out, [1 - h, h], atol=1e-12)


def test_step_eigenvector_decay():
    H = hl.build(3, [(0, 1, 2)])
    u1 = np.ones(3) / math.sqrt(3)
    Q = orthonormal_complement(u1[None, :], 3)
    v2 = np.array([2.0, -1.0, -1.0]) / math.sqrt(6)
    h = 0.05
    out = step(H, v2, DispersionConfig(dt=h, projector=Q))
    np.testing.assert_allclose(out, (1 - h * 1.5) * v2, atol=1e-12)


def test_step_validation():
    with pytest.raises(HypergraphError):
        step(EDGE, np.array([1.0, 0.0]), DispersionConfig(dt=1.0))
    with pytest.raises(HypergraphError):
        step(EDGE, np.array([1.0, 0.0]), DispersionConfig(dt=0.1, delta=2.0))
    bad = DispersionConfig(dt=0.1, projector=np.array([[1.0], [1.0]]))
    with pytest.raises(HypergraphError):
        step(EDGE, np.array([1.0, 0.0]), bad)


def test_simulate_flat_trace_and_conservation():
    H = hl.build(5, [(0, 1, 2), (2, 3, 4)])
    mu = hl.stationary_distribution(H)
    trace = simulate(H, mu, DispersionConfig(dt=0.01, T=0.5))
    assert max(trace.l1_dists) <= 1e-12
    rng = rng_for(41)
    mu0 = rng.dirichlet(np.ones(H.n))
    trace = simulate(H, mu0, DispersionConfig(dt=0.01, T=1.0))
    for vec in trace.vectors:
        assert vec.sum() == pytest.approx(1.0, abs=1e-9)
    assert trace.times == sorted(trace.times)


def test_simulate_single_edge_closed_form():
    trace = simulate(EDGE, np.array([1.0, 0.0]), DispersionConfig(dt=1e-3, T=2.0))
    for t, l1 in zip(trace.times[::200], trace.l1_dists[::200]):
        assert l1 == pytest.approx(math.exp(-2 * t), rel=5e-3)


def test_simulate_l2_norm_nonincreasing_on_regular():
    for name, H in corpus.regular_instances()[:6]:
        mu_star = hl.stationary_distribution(H)
        u1 = mu_star / np.linalg.norm(mu_star)
        Q = orthonormal_complement(u1[None, :], H.n)
        om0 = rng_for(42, H.n).standard_normal(H.n)
        om0 -= u1 * float(u1 @ om0)
        trace = simulate(H, om0, DispersionConfig(dt=5e-3, T=2.0, projector=Q))
        norms = np.array(trace.l2_norms)
        assert np.all(np.diff(norms) <= 1e-12)


def test_support_changes_logged():
    H = hl.build(3, [(0, 1, 2)])
    mu0 = np.array([0.9, 0.1, 0.0])
    trace = simulate(H, mu0, DispersionConfig(dt=0.01, T=3.0))
    assert trace.support_changes  # ordering of the two low vertices flips


def test_mixing_time_examples():
    H = hl.build(5, [(0, 1, 2), (2, 3, 4)])
    res = mixing_time(H, hl.stationary_distribution(H), delta=0.01)
    assert res.time == 0.0 and res.mixed
    res = mixing_time(EDGE, np.array([1.0, 0.0]), delta=0.01,
                      cfg=DispersionConfig(dt=1e-3, T=4.0), lambda2_estimate=2.0)
    assert res.mixed
    assert res.time == pytest.approx(math.log(100) / 2, rel=0.05)
    assert res.within_bound
    with pytest.raises(HypergraphError):
        mixing_time(EDGE, np.array([0.7, 0.7]), delta=0.01)


def test_mixing_time_horizon_exhausted():
    H = corpus.regular_disconnected(4)
    mu0 = np.zeros(H.n)
    mu0[:4] = 0.25
    res = mixing_time(H, mu0, delta=0.01, cfg=DispersionConfig(dt=0.01, T=2.0))
    assert not res.mixed and math.isinf(res.time)
    assert res.final_distance > 0.5


def test_slow_mixing_construction():
    H = corpus.cycle_graph(6)
    pair = hl.eig_sequence(H, 2, "exact")[1]
    v2 = hl.density_scale(H, pair.vector)
    mu = slow_mixing_distribution(H, v2)
    assert mu.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(mu >= -1e-15)
    assert np.abs(mu - 1.0 / 6).sum() == pytest.approx(0.5, abs=1e-12)
    centered = v2 - v2.mean()
    assert hl.rayleigh(H, mu - 1.0 / 6) <= 4 * hl.rayleigh(H, centered) + 1e-9


def test_slow_mixing_rejects_bad_inputs():
    with pytest.raises(HypergraphError):
        slow_mixing_distribution(hl.build(3, [(0, 1), (1, 2)]), np.array([1.0, 0, -1]))
    H = corpus.cycle_graph(4)
    with pytest.raises(HypergraphError):
        slow_mixing_distribution(H, np.ones(4))


def test_slow_mixing_disconnected_never_mixes():
    H = corpus.regular_disconnected(4)
    X = np.array([1.0] * 4 + [-1.0] * 4)
    mu = slow_mixing_distribution(H, X)
    delta = 0.01
    res = mixing_time(H, mu, delta=delta, cfg=DispersionConfig(dt=0.01, T=5.0))
    assert not res.mixed
    assert res.final_distance >= 2 * delta


def test_slow_mixing_rayleigh_factor_random_regular():
    for name, H in corpus.regular_instances():
        if H.n < 4 or H.n % 2:
            continue
        X = rng_for(43, H.n).standard_normal(H.n)
        mu = slow_mixing_distribution(H, X)
        centered = X - X.mean()
        assert hl.rayleigh(H, mu - 1.0 / H.n) <= 4 * hl.rayleigh(H, centered) + 1e-9


def test_bottleneck_cut_disconnected():
    H = corpus.regular_disconnected(4)
    mu0 = np.zeros(H.n)
    mu0[:4] = 0.25
    cut = bottleneck_cut(H, mu0, DispersionConfig(dt=0.01, T=2.0))
    assert cut.expansion == pytest.approx(0.0, abs=1e-12)


def test_bottleneck_cut_dumbbell_matches_brute_force():
    H = corpus.dumbbell()
    mu0 = np.zeros(H.n)
    mu0[:4] = 0.25
    cut = bottleneck_cut(H, mu0, DispersionConfig(dt=0.01, T=5.0))
    S_best, phi_best = hl.brute_force_expansion(H)
    assert cut.expansion == pytest.approx(phi_best, abs=1e-12)
    assert set(cut.set) in ({0, 1, 2, 3}, {4, 5, 6, 7})
    mu_star = hl.stationary_distribution(H)
    assert mu_star[list(cut.set)].sum() <= 0.5 + 1e-12
    # Cheeger lower sandwich: phi(S) >= lambda2 / 2
    lam2 = hl.eig_sequence(H, 2, "exact")[1].value
    assert cut.expansion >= lam2 / 2 - 1e-9


def test_l2_decay_rate_bounded_by_lambda2():
    H = corpus.cycle_graph(6)
    lam2 = hl.eig_sequence(H, 2, "exact")[1].value
    mu_star = hl.stationary_distribution(H)
    u1 = mu_star / np.linalg.norm(mu_star)
    Q = orthonormal_complement(u1[None, :], H.n)
    om0 = rng_for(44).standard_normal(H.n)
    om0 -= u1 * float(u1 @ om0)
    trace = simulate(H, om0, DispersionConfig(dt=1e-3, T=3.0, projector=Q))
    n0 = trace.l2_norms[0]
    for t, nt in zip(trace.times[::500], trace.l2_norms[::500]):
        assert nt <= n0 * math.exp(-lam2 * t) + 1e-9
