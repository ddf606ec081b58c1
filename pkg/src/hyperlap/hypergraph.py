"""Weighted hypergraph model, expansion functionals, oracles, and hMETIS I/O.

Vertices are dense 0-based integers. Hypergraphs are immutable after
construction; every operation here is a pure function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

BRUTE_FORCE_MAX_N = 22


class HypergraphError(ValueError):
    """Base class for invalid hypergraph inputs."""


class InvalidCutError(HypergraphError):
    """Raised when a cut set is empty or covers all vertices."""


class SizeGuardError(HypergraphError):
    """Raised when an exhaustive oracle is asked for an instance too large."""


class DisconnectedError(HypergraphError):
    """Raised when an operation requires a connected hypergraph."""


class ParseError(HypergraphError):
    """hMETIS parse failure; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Hypergraph:
    """A weighted hypergraph H = (V, E, w) with cached vertex degrees.

    ``edges`` holds sorted vertex tuples (each of size >= 2, no repeats);
    ``weights`` are strictly positive floats, one per edge. Every vertex
    must be covered by at least one edge so that all degrees are positive.
    """

    n: int
    edges: tuple[tuple[int, ...], ...]
    weights: np.ndarray
    degrees: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise HypergraphError("need at least one vertex")
        edges = tuple(tuple(sorted(int(v) for v in e)) for e in self.edges)
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if len(edges) != weights.size:
            raise HypergraphError("edge/weight count mismatch")
        for e in edges:
            if len(e) < 2:
                raise HypergraphError(f"edge {e} has fewer than 2 vertices")
            if len(set(e)) != len(e):
                raise HypergraphError(f"edge {e} repeats a vertex")
            if e[0] < 0 or e[-1] >= self.n:
                raise HypergraphError(f"edge {e} out of range for n={self.n}")
        if weights.size and (not np.all(np.isfinite(weights)) or np.any(weights <= 0)):
            raise HypergraphError("edge weights must be positive and finite")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "weights", weights)
        degrees = self._recompute_degrees(self.n, edges, weights)
        if np.any(degrees <= 0):
            isolated = [v for v in range(self.n) if degrees[v] <= 0]
            raise HypergraphError(f"isolated vertices not accepted: {isolated}")
        object.__setattr__(self, "degrees", degrees)
        self.weights.setflags(write=False)
        self.degrees.setflags(write=False)

    @staticmethod
    def _recompute_degrees(n, edges, weights) -> np.ndarray:
        d = np.zeros(n)
        for e, w in zip(edges, weights):
            for v in e:
                d[v] += w
        return d

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def r_min(self) -> int:
        return min(len(e) for e in self.edges)

    @property
    def r_max(self) -> int:
        return max(len(e) for e in self.edges)

    @property
    def total_volume(self) -> float:
        return float(self.degrees.sum())

    def volume(self, S: Iterable[int]) -> float:
        idx = list(S)
        return float(self.degrees[idx].sum()) if idx else 0.0

    def incident_edges(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in e]

    def vertex_adjacency(self) -> list[set[int]]:
        """Co-membership adjacency: u ~ v iff some edge contains both."""
        adj = [set() for _ in range(self.n)]
        for e in self.edges:
            for u in e:
                adj[u].update(e)
        for v in range(self.n):
            adj[v].discard(v)
        return adj

    def components(self) -> list[list[int]]:
        adj = self.vertex_adjacency()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1


def build(n: int, edges: Sequence[Iterable[int]], weights=None) -> Hypergraph:
    """Convenience constructor; unweighted edges get weight 1.0."""
    edges = [tuple(e) for e in edges]
    if weights is None:
        weights = np.ones(len(edges))
    return Hypergraph(n=n, edges=tuple(edges), weights=np.asarray(weights, dtype=float))


@dataclass(frozen=True)
class CutResult:
    """A vertex set with its expansion value and the certificate vector.

    ``ratio_type`` records the denominator convention: "symmetric" divides
    the crossing weight by min{vol(S), vol(V-S)}, "one-sided" by vol(S).
    """

    set: tuple[int, ...]
    expansion: float
    ratio_type: str = "symmetric"
    certificate: np.ndarray | None = None

    def to_json(self) -> dict:
        cert = [] if self.certificate is None else [float(x) for x in self.certificate]
        return {
            "set": [int(v) for v in self.set],
            "expansion": float(self.expansion),
            "ratio_type": self.ratio_type,
            "certificate": cert,
        }


def cut_weight(H: Hypergraph, S: Iterable[int]) -> float:
    """Total weight of hyperedges with at least one endpoint on each side."""
    inside = np.zeros(H.n, dtype=bool)
    inside[list(S)] = True
    total = 0.0
    for e, w in zip(H.edges, H.weights):
        flags = inside[list(e)]
        if flags.any() and not flags.all():
            total += w
    return total


def expansion(H: Hypergraph, S: Iterable[int], ratio_type: str = "symmetric") -> float:
    """phi(S): crossing edge weight over the chosen volume denominator."""
    S = sorted(set(int(v) for v in S))
    if not S or len(S) >= H.n:
        raise InvalidCutError("cut side must be a nonempty proper subset")
    cut = cut_weight(H, S)
    vol_s = H.volume(S)
    if ratio_type == "symmetric":
        denom = min(vol_s, H.total_volume - vol_s)
    elif ratio_type == "one-sided":
        denom = vol_s
    else:
        raise ValueError(f"unknown ratio_type {ratio_type!r}")
    return cut / denom


def _edge_masks(H: Hypergraph) -> np.ndarray:
    masks = np.zeros(H.m, dtype=np.uint64)
    for i, e in enumerate(H.edges):
        m = 0
        for v in e:
            m |= 1 << v
        masks[i] = m
    return masks


def brute_force_expansion(H: Hypergraph) -> tuple[tuple[int, ...], float]:
    """Exact minimizer of phi over all proper cuts, by enumeration.

    Fixes vertex n-1 outside S, which covers every cut up to complement.
    """
    if H.n > BRUTE_FORCE_MAX_N:
        raise SizeGuardError(f"n={H.n} exceeds enumeration guard {BRUTE_FORCE_MAX_N}")
    n = H.n
    masks = _edge_masks(H)
    w = H.weights
    deg = H.degrees
    total = deg.sum()
    sets = np.arange(1, 1 << (n - 1), dtype=np.uint64)
    # crossing: edge neither inside S nor inside the complement
    cut = np.zeros(sets.size)
    for em, ew in zip(masks, w):
        inter = sets & em
        crossing = (inter != 0) & (inter != em)
        cut += ew * crossing
    vol = np.zeros(sets.size)
    for v in range(n - 1):
        vol += np.where((sets >> np.uint64(v)) & np.uint64(1), deg[v], 0.0)
    phi = cut / np.minimum(vol, total - vol)
    best = int(np.argmin(phi))
    best_mask = int(sets[best])
    S = tuple(v for v in range(n) if (best_mask >> v) & 1)
    return S, float(phi[best])


def stationary_distribution(H: Hypergraph) -> np.ndarray:
    """mu*(i) = d_i / sum_j d_j."""
    return H.degrees / H.degrees.sum()


def diameter_bfs(H: Hypergraph) -> int:
    """Max over vertex pairs of the shortest edge-path length.

    A path e_1..e_l connects u to v when u is in e_1, v is in e_l, and
    consecutive edges intersect; BFS over co-membership counts exactly
    the number of edges on such a path.
    """
    adj = H.vertex_adjacency()
    diam = 0
    for s in range(H.n):
        dist = [-1] * H.n
        dist[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if dist[v] < 0:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        if min(dist) < 0:
            raise DisconnectedError("diameter undefined for disconnected hypergraph")
        diam = max(diam, max(dist))
    return diam


def parse_hmetis(text: str) -> Hypergraph:
    """Parse the hMETIS .hgr format.

    Header is "m n [fmt]"; fmt=1 prefixes each edge line with its weight.
    Vertex ids are 1-based; '%' lines are comments.
    """
    lines = text.splitlines()
    header = None
    edges: list[tuple[int, ...]] = []
    weights: list[float] = []
    m = n = None
    weighted = False
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) not in (2, 3):
                raise ParseError(line_no, "header must be 'm n [fmt]'")
            try:
                m, n = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError(line_no, "header fields must be integers") from None
            if len(tokens) == 3:
                if tokens[2] != "1":
                    raise ParseError(line_no, f"unsupported fmt {tokens[2]!r}")
                weighted = True
            if m < 0 or n < 1:
                raise ParseError(line_no, "header values out of range")
            header = (m, n)
            continue
        if len(edges) >= m:
            raise ParseError(line_no, f"more than {m} edge lines")
        if weighted:
            try:
                w = float(tokens[0])
            except ValueError:
                raise ParseError(line_no, f"bad edge weight {tokens[0]!r}") from None
            if not math.isfinite(w) or w <= 0:
                raise ParseError(line_no, f"nonpositive edge weight {w}")
            vertex_tokens = tokens[1:]
        else:
            w = 1.0
            vertex_tokens = tokens
        try:
            verts = [int(t) for t in vertex_tokens]
        except ValueError:
            raise ParseError(line_no, "vertex ids must be integers") from None
        for v in verts:
            if v < 1 or v > n:
                raise ParseError(line_no, f"vertex id {v} out of range 1..{n}")
        uniq = sorted(set(verts))
        if len(uniq) != len(verts):
            raise ParseError(line_no, "edge repeats a vertex")
        if len(uniq) < 2:
            raise ParseError(line_no, "singleton edges are not accepted")
        edges.append(tuple(v - 1 for v in uniq))
        weights.append(w)
    if header is None:
        raise ParseError(max(1, len(lines)), "missing header line")
    if len(edges) != m:
        raise ParseError(len(lines) or 1, f"expected {m} edges, found {len(edges)}")
    try:
        return Hypergraph(n=n, edges=tuple(edges), weights=np.array(weights))
    except HypergraphError as exc:
        raise ParseError(len(lines) or 1, str(exc)) from exc


def _format_weight(w: float) -> str:
    return repr(int(w)) if float(w).is_integer() else repr(float(w))


def serialize_hmetis(H: Hypergraph) -> str:
    """Serialize to .hgr; edges are emitted in canonical sorted order."""
    order = sorted(range(H.m), key=lambda i: H.edges[i])
    weighted = bool(np.any(H.weights != 1.0))
    lines = [f"{H.m} {H.n} 1" if weighted else f"{H.m} {H.n}"]
    for i in order:
        ids = " ".join(str(v + 1) for v in H.edges[i])
        if weighted:
            lines.append(f"{_format_weight(H.weights[i])} {ids}")
        else:
            lines.append(ids)
    return "\n".join(lines) + "\n"
