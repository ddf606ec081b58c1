"""Vertex expansion in graphs via the hypergraph reduction and the
vertex-expansion Markov operator.

The reduction adds one hyperedge {v} union N(v) per vertex. For a d-regular
graph this makes every hypergraph degree d+1 and, for any side S with
|S| <= n/2, ties the two functionals exactly:

    phi_H(S) = phi_V(S) / (d + 1)

The vertex-expansion operator walks each vertex toward its farthest
neighbor (weight 1/d per chosen edge, self-loops padding every weighted
degree to one); its Laplacian's second eigenvalue is computed by the same
enumerate-and-check machinery used for hypergraph eigenvalues.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, HypergraphError, InvalidCutError, SizeGuardError
from .spectral import BudgetExceededError, EigenPair, _canonical_sign, _clamp_value
from .seeding import rng_for

DEFAULT_EPS_TIE = 1e-9
CONSISTENCY_TOL = 1e-8


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph without self-loops."""

    n: int
    edges: tuple[tuple[int, int], ...]
    weights: np.ndarray

    def __post_init__(self):
        edges = tuple(tuple(sorted((int(u), int(v)))) for u, v in self.edges)
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if len(edges) != w.size:
            raise HypergraphError("edge/weight count mismatch")
        for u, v in edges:
            if u == v:
                raise HypergraphError("self loops are not allowed")
            if u < 0 or v >= self.n:
                raise HypergraphError(f"edge ({u},{v}) out of range")
        if len(set(edges)) != len(edges):
            raise HypergraphError("parallel edges are not allowed")
        if w.size and np.any(w <= 0):
            raise HypergraphError("edge weights must be positive")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_edges(cls, n: int, edges, weights=None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if weights is None:
            weights = np.ones(len(edges))
        return cls(n=n, edges=tuple(edges), weights=np.asarray(weights, float))

    def neighbors(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return [sorted(a) for a in adj]

    def degree_counts(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=int)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @property
    def max_degree(self) -> int:
        return int(self.degree_counts().max())

    def is_regular(self) -> bool:
        deg = self.degree_counts()
        return bool(np.all(deg == deg[0]))


def parse_edge_list(text: str) -> Graph:
    """One 'u v [w]' line per edge, 1-based vertex ids, '%' comments."""
    edges = []
    weights = []
    hi = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise HypergraphError(f"line {line_no}: expected 'u v [w]'")
        u, v = int(tokens[0]) - 1, int(tokens[1]) - 1
        w = float(tokens[2]) if len(tokens) == 3 else 1.0
        hi = max(hi, u, v)
        edges.append((u, v))
        weights.append(w)
    return Graph.from_edges(hi + 1, edges, weights)


def boundary_sets(G: Graph, S) -> tuple[set[int], set[int]]:
    """Internal and external vertex boundaries of S (unweighted counts)."""
    inside = np.zeros(G.n, dtype=bool)
    inside[list(S)] = True
    adj = G.neighbors()
    n_in = {v for v in range(G.n)
            if inside[v] and any(not inside[u] for u in adj[v])}
    n_out = {v for v in range(G.n)
             if not inside[v] and any(inside[u] for u in adj[v])}
    return n_in, n_out


def vertex_expansion(G: Graph, S) -> float:
    """(|N_in(S)| + |N_out(S)|) / |S|."""
    S = sorted(set(int(v) for v in S))
    if not S or len(S) >= G.n:
        raise InvalidCutError("cut side must be a nonempty proper subset")
    n_in, n_out = boundary_sets(G, S)
    return (len(n_in) + len(n_out)) / len(S)


def brute_force_vertex_expansion(G: Graph, max_size: int | None = None) -> tuple[tuple[int, ...], float]:
    """Exact minimizer of phi_V over nonempty S with |S| <= max_size (default n/2)."""
    if G.n > 20:
        raise SizeGuardError(f"n={G.n} exceeds enumeration guard 20")
    limit = max_size if max_size is not None else G.n // 2
    best = None
    for size in range(1, limit + 1):
        for S in itertools.combinations(range(G.n), size):
            val = vertex_expansion(G, S)
            if best is None or val < best[1]:
                best = (S, val)
    return best


def reduce_to_hypergraph(G: Graph) -> Hypergraph:
    """One unit-weight hyperedge {v} union N(v) per vertex v."""
    adj = G.neighbors()
    edges = []
    for v in range(G.n):
        if not adj[v]:
            raise HypergraphError("reduction needs every vertex to have a neighbor")
        edges.append(tuple(sorted([v] + adj[v])))
    return Hypergraph(n=G.n, edges=tuple(edges), weights=np.ones(G.n))


def _pick_sets(vals_u: float, vals: np.ndarray, eps_tie: float) -> np.ndarray:
    gaps = np.abs(vals - vals_u)
    top = gaps.max()
    thr = eps_tie * max(top, 1.0)
    return np.nonzero(gaps >= top - thr)[0]


def mvert_adjacency(G: Graph, X, eps_tie: float = DEFAULT_EPS_TIE) -> np.ndarray:
    """Adjacency of the walk graph: each vertex picks its farthest neighbors.

    A picked edge {u, v} gets weight (1/d) / |T_u| from u's side; when both
    endpoints pick each other the larger share is kept (not summed), so the
    weighted degree never exceeds one. Self-loops pad each degree to one.
    """
    X = np.asarray(X, dtype=float)
    if X.shape != (G.n,):
        raise HypergraphError(f"vector has shape {X.shape}, expected ({G.n},)")
    d = G.max_degree
    if d == 0:
        raise HypergraphError("graph has no edges")
    adj = G.neighbors()
    A = np.zeros((G.n, G.n))
    for u in range(G.n):
        nb = np.asarray(adj[u])
        if nb.size == 0:
            continue
        picks = nb[_pick_sets(X[u], X[nb], eps_tie)]
        share = (1.0 / d) / len(picks)
        for v in picks:
            A[u, v] = max(A[u, v], share)
            A[v, u] = A[u, v]
    np.fill_diagonal(A, 0.0)
    rows = A.sum(axis=1)
    A[np.diag_indices(G.n)] = np.maximum(1.0 - rows, 0.0)
    return A


def mvert_apply(G: Graph, X, eps_tie: float = DEFAULT_EPS_TIE) -> np.ndarray:
    """M_vert(X) = A_X X."""
    X = np.asarray(X, dtype=float)
    return mvert_adjacency(G, X, eps_tie) @ X


def _pick_configurations(deg: int, tie_limit: int = 2):
    """Subsets of neighbor slots a vertex may pick (argmax tie sets)."""
    out = []
    for size in range(1, min(tie_limit, deg) + 1):
        out.extend(itertools.combinations(range(deg), size))
    return out


def _mvert_config_matrices(G: Graph, tie_limit: int, budget: int) -> np.ndarray:
    adj = G.neighbors()
    per_vertex = [_pick_configurations(len(adj[u]), tie_limit) for u in range(G.n)]
    total = 1
    for c in per_vertex:
        total *= max(len(c), 1)
    if total > budget:
        raise BudgetExceededError(f"{total} pick configurations exceed budget {budget}")
    d = G.max_degree
    mats = np.zeros((total, G.n, G.n))
    for idx, combo in enumerate(itertools.product(*per_vertex)):
        A = mats[idx]
        for u, picks in enumerate(combo):
            share = (1.0 / d) / len(picks)
            for slot in picks:
                v = adj[u][slot]
                A[u, v] = max(A[u, v], share)
                A[v, u] = A[u, v]
        rows = A.sum(axis=1)
        A[np.arange(G.n), np.arange(G.n)] = np.maximum(1.0 - rows, 0.0)
    return mats


def _consistent_pairs(G: Graph, mats: np.ndarray, ortho_to_ones: bool) -> list[EigenPair]:
    n = G.n
    ones = np.ones(n) / np.sqrt(n)
    pairs: list[EigenPair] = []
    for A in mats:
        alphas, U = np.linalg.eigh(A)
        for a, u in zip(alphas, U.T):
            lam = 1.0 - a
            if ortho_to_ones:
                u = u - ones * float(ones @ u)
                nv = np.linalg.norm(u)
                if nv < 1e-9:
                    continue
                u = u / nv
            Lu = u - mvert_apply(G, u, eps_tie=1e-7)
            if ortho_to_ones:
                Lu = Lu - ones * float(ones @ Lu)
            resid = float(np.linalg.norm(Lu - lam * u))
            if resid <= CONSISTENCY_TOL:
                pairs.append(EigenPair(value=_clamp_value(float(lam)),
                                       vector=_canonical_sign(u),
                                       method="exact", consistency_residual=resid))
    pairs.sort(key=lambda p: p.value)
    return pairs


def _mvert_quotient(G: Graph, X) -> float:
    """X^T (I - A_X) X / X^T X, the quotient lambda_inf minimizes."""
    X = np.asarray(X, dtype=float)
    A = mvert_adjacency(G, X)
    return float(X @ (X - A @ X)) / float(X @ X)


def _indicator_candidates(G: Graph) -> list[np.ndarray]:
    if G.n > 16:
        return []
    out = []
    for mask in range(1, 1 << (G.n - 1)):
        chi = np.array([(mask >> v) & 1 for v in range(G.n)], dtype=float)
        out.append(chi)
    return out


def _descend_quotient(G: Graph, quot, seed: int, starts: int = 4,
                      extra: list[np.ndarray] | None = None) -> float:
    """Variational minimum of a centered quotient by multistart descent.

    Seeds a derivative-free local search from random directions, from the
    supplied candidate vectors, and from cut indicators; quotients of this
    family are scale- and shift-invariant, so everything is centered first.
    The result is a certified upper bound on the true minimum and lands on
    it in practice (these are tiny instances).
    """
    from scipy.optimize import minimize

    n = G.n

    def centered(a):
        a = np.asarray(a, dtype=float)
        a = a - a.mean()
        nv = np.linalg.norm(a)
        return None if nv < 1e-12 else a / nv

    def f(a):
        c = centered(a)
        return 10.0 if c is None else quot(c)

    seeds = [rng_for(seed, 0x1F, t).standard_normal(n) for t in range(starts)]
    seeds += list(extra or [])
    cand = [c for c in (centered(x) for x in seeds + _indicator_candidates(G))
            if c is not None]
    cand.sort(key=quot)
    best = quot(cand[0])
    for x0 in cand[: starts + len(extra or []) + 2]:
        res = minimize(f, x0, method="Nelder-Mead",
                       options={"xatol": 1e-13, "fatol": 1e-15,
                                "maxiter": 3000, "maxfev": 3000})
        best = min(best, float(res.fun))
    return float(max(best, 0.0))


def _mvert_flow(G: Graph, seed: int, starts: int = 2, max_T: float = 300.0,
                dt: float = 0.1) -> list[tuple[float, np.ndarray]]:
    """Projected dispersion iterates of M_vert from random centered starts."""
    n = G.n
    ones = np.ones(n) / np.sqrt(n)
    out = []
    for t in range(starts):
        v = rng_for(seed, 0x1F, t).standard_normal(n)
        v -= ones * float(ones @ v)
        v /= np.linalg.norm(v)
        best = (_mvert_quotient(G, v), v)
        for _ in range(int(max_T / dt)):
            w = (1 - dt) * v + dt * mvert_apply(G, v)
            w -= ones * float(ones @ w)
            nv = np.linalg.norm(w)
            if nv <= 1e-300:
                break
            v = w / nv
            q = _mvert_quotient(G, v)
            if q < best[0]:
                best = (q, v)
        out.append(best)
    return out


def lambda_inf(G: Graph, method: str = "exact", seed: int = 0,
               tie_limit: int = 2, budget: int = 3000,
               max_T: float = 300.0, dt: float = 0.1) -> float:
    """Second smallest eigenvalue of I - M_vert, in the variational sense.

    The eigenvalue is the minimum of X^T (I - A_X) X / X^T X over centered
    X. method 'exact' enumerates per-vertex pick configurations, keeps
    consistent eigenpairs, and refines with the projected flow plus
    variational descent (the minimum can sit on a sliding plateau that no
    single configuration attains); 'iter' skips the enumeration. Both
    methods share a fixed block of flow starts so the two routes descend
    into the same basin.
    """
    if method not in ("exact", "iter", "iterative"):
        raise ValueError(f"unknown method {method!r}")
    flows = _mvert_flow(G, seed=0xB45E, starts=3, max_T=max_T, dt=dt)
    flows += _mvert_flow(G, seed=seed, starts=1, max_T=max_T, dt=dt)
    extra = [v for _, v in flows]
    best = min(q for q, _ in flows)
    if method == "exact":
        per_vertex = [_pick_configurations(len(a), tie_limit) for a in G.neighbors()]
        total = 1
        for c in per_vertex:
            total *= max(len(c), 1)
        if total <= budget:
            pairs = _consistent_pairs(G, _mvert_config_matrices(G, tie_limit, budget),
                                      ortho_to_ones=True)
            if pairs:
                best = min(best, pairs[0].value)
                extra.append(pairs[0].vector)
    floor = _descend_quotient(G, lambda x: _mvert_quotient(G, x),
                              seed=0xB45E, extra=extra)
    return float(min(best, floor))


def bht_lambda_inf(G: Graph, seed: int = 0, tie_limit: int = 2,
                   budget: int = 3000,
                   extra_vectors: list[np.ndarray] | None = None) -> float:
    """Variational minimum of sum_u max_{v~u}(X_u - X_v)^2 over centered X.

    This is the Poincare-type vertex-expansion functional of the Cheeger
    sandwich (each vertex contributes its own pick at unit weight, so
    mutual picks count twice). Configuration enumeration supplies exact
    eigen-candidates; cut indicators and multistart descent cover sliding
    minima. The result is an upper bound on the true minimum that is also
    at most twice the vertex expansion of the best indicator cut.
    """
    adj = G.neighbors()
    per_vertex = [_pick_configurations(len(adj[u]), tie_limit) for u in range(G.n)]
    total = 1
    for c in per_vertex:
        total *= max(len(c), 1)
    n = G.n
    ones = np.ones(n) / np.sqrt(n)
    enum_best = np.inf
    enum_vec = None
    if total <= budget:
        for combo in itertools.product(*per_vertex):
            L = np.zeros((n, n))
            for u, picks in enumerate(combo):
                share = 1.0 / len(picks)
                for slot in picks:
                    v = adj[u][slot]
                    L[u, u] += share
                    L[v, v] += share
                    L[u, v] -= share
                    L[v, u] -= share
            vals, U = np.linalg.eigh(L)
            for lam, u in zip(vals, U.T):
                u = u - ones * float(ones @ u)
                nv = np.linalg.norm(u)
                if nv < 1e-9:
                    continue
                u /= nv
                if abs(_bht_value(G, u, adj) - lam) <= 1e-8 and lam < enum_best:
                    enum_best = float(lam)
                    enum_vec = u
    extra = list(extra_vectors or [])
    if enum_vec is not None:
        extra.append(enum_vec)
    floor = _descend_quotient(G, lambda x: bht_functional(G, x),
                              seed=seed, extra=extra)
    return float(min(enum_best, floor))


def _bht_value(G: Graph, X, adj=None) -> float:
    X = np.asarray(X, dtype=float)
    if adj is None:
        adj = G.neighbors()
    Xc = X - X.mean()
    num = sum(max((X[u] - X[v]) ** 2 for v in adj[u]) for u in range(G.n) if adj[u])
    return float(num) / float(Xc @ Xc)


def bht_functional(G: Graph, X) -> float:
    """sum_u max_{v~u}(X_u - X_v)^2 over the centered squared norm of X."""
    return _bht_value(G, X)


@dataclass
class ReductionReport:
    """Sandwich bounds tying vertex expansion to the reduced hypergraph."""

    lambda_inf: float
    bht_value: float
    lambda2_reduction: float
    phi_vertex: float
    phi_hypergraph: float
    factor_four_ok: bool
    sandwich_ok: bool
    bht_sandwich_ok: bool


def reduction_report(G: Graph, lambda2_H: float, lam_inf: float,
                     bht_value: float | None = None) -> ReductionReport:
    """Check the reduction sandwich, the factor-four relation, and the
    vertex-expansion Cheeger sandwich for a regular graph.

    For a d-regular graph phi_H(S) equals phi_V(S)/(d+1) on every side with
    |S| <= n/2, so the sandwich phi_V/(d+1) <= phi_H <= phi_V/d holds with
    equality on the left. The factor-four relation compares the reduction's
    eigenvalue in the degree convention of the vertex-expansion theory
    (numerator over d sum x^2, i.e. lambda2_H scaled by (d+1)/d) with the
    Poincare functional over d; the Cheeger sandwich brackets the
    brute-force vertex expansion by that functional.
    """
    d = G.max_degree
    H = reduce_to_hypergraph(G)
    from .hypergraph import brute_force_expansion, expansion as h_expansion

    _, phi_h = brute_force_expansion(H)
    _, phi_v = brute_force_vertex_expansion(G)
    if bht_value is None:
        bht_value = bht_lambda_inf(G)
    lam2_paper = lambda2_H * (d + 1) / d
    ratio = bht_value / d
    factor_ok = (lam2_paper / 4 - 1e-9 <= ratio <= lam2_paper + 1e-9)
    bht_ok = (bht_value / 2 - 1e-9 <= phi_v <= math.sqrt(2 * bht_value) + 1e-9)
    sandwich_ok = True
    for size in range(1, G.n // 2 + 1):
        for S in itertools.combinations(range(G.n), size):
            pv = vertex_expansion(G, S)
            ph = h_expansion(H, S)
            if not (pv / (d + 1) - 1e-9 <= ph <= pv / d + 1e-9):
                sandwich_ok = False
    return ReductionReport(lambda_inf=lam_inf, bht_value=bht_value,
                           lambda2_reduction=lambda2_H,
                           phi_vertex=phi_v, phi_hypergraph=phi_h,
                           factor_four_ok=factor_ok, sandwich_ok=sandwich_ok,
                           bht_sandwich_ok=bht_ok)
