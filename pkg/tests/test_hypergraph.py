import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hyperlap as hl
from hyperlap import corpus
from hyperlap.hypergraph import (
    DisconnectedError,
    HypergraphError,
    InvalidCutError,
    ParseError,
    SizeGuardError,
)
from hyperlap.seeding import rng_for


def test_construction_validates():
    with pytest.raises(HypergraphError):
        hl.build(3, [(0,)])  # singleton edge
    with pytest.raises(HypergraphError):
        hl.build(3, [(0, 0, 1)])  # repeated vertex
    with pytest.raises(HypergraphError):
        hl.build(2, [(0, 2)])  # out of range
    with pytest.raises(HypergraphError):
        hl.build(3, [(0, 1)], [0.0])  # nonpositive weight
    with pytest.raises(HypergraphError):
        hl.build(4, [(0, 1)])  # isolated vertices


def test_degrees_match_recomputation():
    rng = rng_for(1)
    for t in range(20):
        H = corpus.random_hypergraph(rng_for(1, t), weighted=True,
                                     require_connected=False, max_configs=None)
        again = hl.Hypergraph._recompute_degrees(H.n, H.edges, H.weights)
        np.testing.assert_allclose(H.degrees, again, rtol=0, atol=0)


def test_expansion_examples():
    H = hl.build(3, [(0, 1, 2)])
    assert hl.expansion(H, [0]) == 1.0
    H2 = hl.build(4, [(0, 1), (2, 3)])
    assert hl.expansion(H2, [0, 1]) == 0.0
    H3 = hl.build(5, [(0, 1, 2), (2, 3, 4)])
    assert hl.expansion(H3, [0, 1, 2]) == pytest.approx(0.5)
    S, phi = hl.brute_force_expansion(H3)
    assert phi == pytest.approx(0.5)


def test_expansion_errors():
    H = hl.build(3, [(0, 1, 2)])
    with pytest.raises(InvalidCutError):
        hl.expansion(H, [])
    with pytest.raises(InvalidCutError):
        hl.expansion(H, [0, 1, 2])


def test_expansion_complement_symmetry():
    for t in range(25):
        H = corpus.random_hypergraph(rng_for(2, t), weighted=(t % 2 == 0),
                                     require_connected=False, max_configs=None)
        rng = rng_for(3, t)
        size = int(rng.integers(1, H.n))
        S = rng.choice(H.n, size=size, replace=False)
        comp = sorted(set(range(H.n)) - set(int(v) for v in S))
        assert hl.expansion(H, S) == pytest.approx(hl.expansion(H, comp))


def test_brute_force_examples_and_guard():
    assert hl.brute_force_expansion(hl.build(2, [(0, 1)]))[1] == 1.0
    assert hl.brute_force_expansion(hl.build(4, [(0, 1), (2, 3)]))[1] == 0.0
    assert hl.brute_force_expansion(hl.build(3, [(0, 1, 2)]))[1] == 1.0
    big = hl.build(23, [tuple(range(23))])
    with pytest.raises(SizeGuardError):
        hl.brute_force_expansion(big)


def test_brute_force_zero_iff_disconnected():
    for t in range(30):
        H = corpus.random_hypergraph(rng_for(4, t), require_connected=False,
                                     max_configs=None)
        _, phi = hl.brute_force_expansion(H)
        assert (phi == 0.0) == (not H.is_connected())


def test_stationary_distribution():
    H = hl.build(3, [(0, 1), (1, 2)])
    np.testing.assert_allclose(hl.stationary_distribution(H), [0.25, 0.5, 0.25])
    H3 = hl.build(3, [(0, 1, 2)])
    np.testing.assert_allclose(hl.stationary_distribution(H3), np.ones(3) / 3)
    for t in range(10):
        H = corpus.random_hypergraph(rng_for(5, t), weighted=True,
                                     require_connected=False, max_configs=None)
        mu = hl.stationary_distribution(H)
        assert mu.sum() == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(mu * H.degrees.sum(), H.degrees)


def test_diameter():
    assert hl.diameter_bfs(hl.build(3, [(0, 1, 2)])) == 1
    assert hl.diameter_bfs(hl.build(5, [(0, 1, 2), (2, 3, 4)])) == 2
    path = hl.build(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert hl.diameter_bfs(path) == 4
    with pytest.raises(DisconnectedError):
        hl.diameter_bfs(hl.build(4, [(0, 1), (2, 3)]))


def test_diameter_matches_clique_expansion():
    # replacing each hyperedge by a clique preserves path structure
    for t in range(15):
        H = corpus.random_hypergraph(rng_for(6, t), max_configs=None)
        adj = [set() for _ in range(H.n)]
        for e in H.edges:
            for u in e:
                adj[u].update(v for v in e if v != u)
        diam = 0
        for s in range(H.n):
            dist = {s: 0}
            frontier = [s]
            while frontier:
                nxt = []
                for u in frontier:
                    for v in adj[u]:
                        if v not in dist:
                            dist[v] = dist[u] + 1
                            nxt.append(v)
                frontier = nxt
            diam = max(diam, max(dist.values()))
        assert hl.diameter_bfs(H) == diam


def test_parse_hmetis_examples():
    H = hl.parse_hmetis("1 3\n1 2 3\n")
    assert H.n == 3 and H.edges == ((0, 1, 2),) and H.weights[0] == 1.0
    H2 = hl.parse_hmetis("2 4 1\n2.5 1 2\n1 3 4\n")
    assert H2.weights.tolist() == [2.5, 1.0]
    assert H2.edges == ((0, 1), (2, 3))
    H3 = hl.parse_hmetis("% comment\n1 2\n\n1 2\n")
    assert H3.n == 2


@pytest.mark.parametrize("text,msg", [
    ("1 3\n1 2 9\n", "out of range"),
    ("1 3\n2\n", "singleton"),
    ("1 3 1\n-1 1 2\n", "nonpositive"),
    ("1 3 7\n1 2\n", "unsupported fmt"),
    ("2 3\n1 2\n", "expected 2 edges"),
    ("1 3\n1 1 2\n", "repeats"),
])
def test_parse_hmetis_errors(text, msg):
    with pytest.raises(ParseError) as err:
        hl.parse_hmetis(text)
    assert msg in str(err.value)


def test_hmetis_round_trip():
    rng = rng_for(7)
    H = corpus.random_hypergraph(rng, n_range=(6, 10), m_range=(10, 10),
                                 size_range=(2, 4), weighted=True,
                                 require_connected=False, max_configs=None)
    text = hl.serialize_hmetis(H)
    again = hl.parse_hmetis(text)
    assert hl.serialize_hmetis(again) == text
    assert again.n == H.n
    assert sorted(again.edges) == sorted(H.edges)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=1,
                max_size=8).filter(lambda es: all(a != b for a, b in es)))
def test_hmetis_round_trip_property(pairs):
    edges = sorted({tuple(sorted(p)) for p in pairs})
    covered = sorted({v for e in edges for v in e})
    relabel = {v: i for i, v in enumerate(covered)}
    edges = [tuple(relabel[v] for v in e) for e in edges]
    H = hl.build(len(covered), edges)
    text = hl.serialize_hmetis(H)
    assert hl.serialize_hmetis(hl.parse_hmetis(text)) == text


def test_cut_result_json():
    cut = hl.CutResult(set=(0, 2), expansion=0.5, ratio_type="symmetric",
                       certificate=np.array([1.0, -1.0, 0.5]))
    js = cut.to_json()
    assert js["set"] == [0, 2]
    assert js["expansion"] == 0.5
    assert js["certificate"] == [1.0, -1.0, 0.5]
