"""Deterministic instance generators and the bundled verification corpora."""

from __future__ import annotations

import itertools

import numpy as np

from .hypergraph import Hypergraph, build
from .seeding import rng_for
from .spectral import certify_minimum, eig_sequence, enumeration_count, orthonormal_complement


def named_instances() -> dict[str, Hypergraph]:
    """Small hand-checkable instances used throughout the test suites."""
    return {
        "single_2edge": build(2, [(0, 1)]),
        "single_3edge": build(3, [(0, 1, 2)]),
        "single_4edge": build(4, [(0, 1, 2, 3)]),
        "two_disjoint_2edges": build(4, [(0, 1), (2, 3)]),
        "overlapping_pair": build(5, [(0, 1, 2), (2, 3, 4)]),
        "path_2edges": build(3, [(0, 1), (1, 2)]),
        "edge_path_4": build(5, [(0, 1), (1, 2), (2, 3), (3, 4)]),
        "weighted_pair": build(4, [(0, 1), (1, 2, 3)], [2.5, 1.0]),
        "triangle": build(3, [(0, 1), (1, 2), (0, 2)]),
        "dumbbell": dumbbell(),
    }


def dumbbell() -> Hypergraph:
    """Two dense 4-vertex clusters joined by a single bridging edge."""
    left = [(0, 1, 2), (1, 2, 3), (0, 2, 3)]
    right = [(4, 5, 6), (5, 6, 7), (4, 6, 7)]
    return build(8, left + right + [(3, 4)])


def cycle_graph(n: int) -> Hypergraph:
    return build(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Hypergraph:
    return build(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Hypergraph:
    return build(n, list(itertools.combinations(range(n), 2)))


def circulant_graph(n: int, offsets: tuple[int, ...]) -> Hypergraph:
    edges = set()
    for i in range(n):
        for o in offsets:
            edges.add(tuple(sorted((i, (i + o) % n))))
    return build(n, sorted(edges))


def circulant_uniform(n: int, r: int) -> Hypergraph:
    """r-uniform circulant hypergraph; every vertex lies in r edges (r-regular)."""
    edges = [tuple(sorted((i + j) % n for j in range(r))) for i in range(n)]
    return build(n, edges)


def random_hypergraph(rng: np.random.Generator, n_range=(4, 10), m_range=(2, 5),
                      size_range=(2, 4), weighted: bool = False,
                      require_connected: bool = True,
                      max_configs: int | None = 3000) -> Hypergraph:
    """Random covered hypergraph; resamples until the constraints hold."""
    lo_n, hi_n = n_range
    for _ in range(400):
        n = int(rng.integers(lo_n, hi_n + 1))
        m = int(rng.integers(m_range[0], m_range[1] + 1))
        edges = set()
        guard = 0
        while len(edges) < m and guard < 200:
            guard += 1
            r = int(rng.integers(size_range[0], min(size_range[1], n) + 1))
            e = tuple(sorted(rng.choice(n, size=r, replace=False).tolist()))
            edges.add(e)
        edges = sorted(edges)
        covered = set()
        for e in edges:
            covered.update(e)
        if len(covered) < n:
            continue
        if weighted:
            w = rng.uniform(0.5, 2.0, size=len(edges))
        else:
            w = np.ones(len(edges))
        H = build(n, edges, w)
        if require_connected and not H.is_connected():
            continue
        if max_configs is not None and enumeration_count(H) > max_configs:
            continue
        return H
    raise RuntimeError("failed to sample a hypergraph under the constraints")


def random_graph_2uniform(rng: np.random.Generator, n_range=(4, 12)) -> Hypergraph:
    """Random connected 2-uniform hypergraph (a graph)."""
    for _ in range(400):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        all_pairs = list(itertools.combinations(range(n), 2))
        p = rng.uniform(0.25, 0.7)
        chosen = [e for e in all_pairs if rng.random() < p]
        # a random spanning tree keeps the instance connected
        perm = rng.permutation(n)
        for i in range(1, n):
            j = int(rng.integers(0, i))
            chosen.append(tuple(sorted((int(perm[i]), int(perm[j])))))
        edges = sorted(set(chosen))
        H = build(n, edges)
        if H.is_connected():
            return H
    raise RuntimeError("failed to sample a connected graph")


def regular_instances() -> list[tuple[str, Hypergraph]]:
    """Regular hypergraphs (equal degrees) driving the dispersion-law tests."""
    out = [(f"cycle_{n}", cycle_graph(n)) for n in (4, 5, 6, 8, 10)]
    out += [(f"circulant3_{n}", circulant_uniform(n, 3)) for n in (5, 6, 8)]
    out += [(f"circulant4_{n}", circulant_uniform(n, 4)) for n in (6, 8)]
    out += [("complete_5", complete_graph(5)), ("complete_4", complete_graph(4))]
    out += [("single_3edge", build(3, [(0, 1, 2)])),
            ("single_2edge", build(2, [(0, 1)]))]
    return out


def regular_disconnected(n_side: int = 4) -> Hypergraph:
    """Two disjoint cycles with equal degrees; lambda_2 = 0."""
    edges = [(i, (i + 1) % n_side) for i in range(n_side)]
    edges += [(n_side + i, n_side + (i + 1) % n_side) for i in range(n_side)]
    return build(2 * n_side, edges)


def planted_clusters(rng: np.random.Generator, k: int, cluster_size: int = 4,
                     bridges: int = 1) -> Hypergraph:
    """k disjoint edge-clusters plus up to one bridging edge between two."""
    n = k * cluster_size
    edges = []
    for c in range(k):
        base = c * cluster_size
        verts = list(range(base, base + cluster_size))
        cover = list(verts)
        rng.shuffle(cover)
        for i in range(0, cluster_size - 1, 2):
            chunk = cover[i:i + 3]
            if len(chunk) < 2:
                chunk = cover[i - 1:i + 2]
            edges.append(tuple(sorted(chunk)))
        edges.append(tuple(sorted((verts[0], verts[-1]))))
    if bridges:
        a, b = rng.choice(k, size=2, replace=False)
        edges.append(tuple(sorted((int(a) * cluster_size,
                                   int(b) * cluster_size + 1))))
    return build(n, sorted(set(edges)))


def demand_instances(seed: int, count: int = 12) -> list[tuple[Hypergraph, list[tuple[int, int]]]]:
    out = []
    base = [(build(3, [(0, 1), (1, 2)]), [(0, 2)])]
    for t in range(count - 1):
        rng = rng_for(seed, 0xDE, t)
        H = random_hypergraph(rng, n_range=(5, 12), m_range=(3, 6),
                              size_range=(2, 4), weighted=(t % 3 == 0),
                              require_connected=False, max_configs=None)
        k = int(rng.integers(1, 6))
        pairs = []
        guard = 0
        while len(pairs) < k and guard < 100:
            guard += 1
            s, d = rng.choice(H.n, size=2, replace=False)
            pairs.append((int(s), int(d)))
        out.append((H, pairs))
    return base + out


def certified_random_hypergraph(rng: np.random.Generator, seed: int,
                                **kwargs) -> Hypergraph | None:
    """A random instance whose enumerated lambda_2 passes the cross-check.

    Instances whose sliding Rayleigh minimizer evades the enumerated
    configuration family are outside the exact oracle's certified domain
    and are resampled.
    """
    for attempt in range(30):
        H = random_hypergraph(rng, **kwargs)
        seq = eig_sequence(H, 2, "exact")
        u1 = np.sqrt(H.degrees)
        u1 /= np.linalg.norm(u1)
        Q = orthonormal_complement(u1[None, :], H.n)
        ok, _ = certify_minimum(H, seq[1].value, Q, seed=seed + attempt)
        if ok:
            return H
    return None


def small_corpus(seed: int, count: int = 220) -> list[tuple[str, Hypergraph]]:
    """Random connected enumeration-feasible instances plus the named ones.

    Every instance carries a certified exact lambda_2 (the enumerated value
    matches the variational cross-check floors).
    """
    out = [(k, H) for k, H in named_instances().items() if H.is_connected()]
    t = 0
    while len(out) < count:
        rng = rng_for(seed, 0x5C, t)
        H = certified_random_hypergraph(rng, seed=seed + 31 * t,
                                        weighted=(t % 2 == 1))
        t += 1
        if H is not None:
            out.append((f"rand_{t - 1}", H))
    return out


def graph_corpus(seed: int, count: int = 100) -> list[tuple[str, Hypergraph]]:
    return [(f"graph_{t}", random_graph_2uniform(rng_for(seed, 0x26, t)))
            for t in range(count)]


def regular_graphs_for_vertexexp() -> list[tuple[str, "object"]]:
    """Regular graphs (as edge lists) for the vertex-expansion suite."""
    from .vertexexp import Graph

    specs = {
        "K2": [(0, 1)],
        "C4": [(i, (i + 1) % 4) for i in range(4)],
        "C5": [(i, (i + 1) % 5) for i in range(5)],
        "C6": [(i, (i + 1) % 6) for i in range(6)],
        "C8": [(i, (i + 1) % 8) for i in range(8)],
        "K3": [(0, 1), (1, 2), (0, 2)],
        "K4": list(itertools.combinations(range(4), 2)),
        "K5": list(itertools.combinations(range(5), 2)),
        "prism": [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                  (0, 3), (1, 4), (2, 5)],
        "cube": [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
                 (0, 4), (1, 5), (2, 6), (3, 7)],
        "circ8_12": None,
    }
    out = []
    for name, edges in specs.items():
        if name == "circ8_12":
            edges = sorted({tuple(sorted((i, (i + o) % 8)))
                            for i in range(8) for o in (1, 2)})
        n = 1 + max(max(e) for e in edges)
        out.append((name, Graph.from_edges(n, edges)))
    return out
