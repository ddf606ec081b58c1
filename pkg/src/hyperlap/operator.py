"""The hypergraph Markov operator M, its support graph, and the Rayleigh quotient.

For an input vector X, each hyperedge contributes a complete bipartite graph
between its argmax set S_e and argmin set R_e (total weight w(e), split
uniformly over the |S_e||R_e| pairs); self-loops pad every vertex to its
hypergraph degree. M(X) = A_X X where A_X = G_X D^-1 is the resulting walk
matrix, and the Laplacian is L = I - M.

Ties are resolved deterministically by the bipartite completion; the tie
tolerance is relative to each edge's value range, which makes the support
graph invariant under positive affine rescaling of X.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, HypergraphError

DEFAULT_EPS_TIE = 1e-9


@dataclass
class SupportGraph:
    """The graph G_X induced by a vector X, with tie sets and walk matrices."""

    n: int
    pairs: list[tuple[int, int, float]]
    self_loops: np.ndarray
    tie_sets: list[tuple[tuple[int, ...], tuple[int, ...]]]
    degrees: np.ndarray

    def adjacency(self) -> np.ndarray:
        G = np.zeros((self.n, self.n))
        for i, j, w in self.pairs:
            G[i, j] += w
            G[j, i] += w
        G[np.diag_indices(self.n)] += self.self_loops
        return G

    def walk_matrix(self) -> np.ndarray:
        """A_X = G_X D^-1 (column-stochastic; A_X mu* = mu*)."""
        return self.adjacency() / self.degrees[None, :]

    def sym_matrix(self) -> np.ndarray:
        """D^-1/2 G_X D^-1/2; symmetric with the same spectrum as A_X."""
        s = np.sqrt(self.degrees)
        return self.adjacency() / (s[:, None] * s[None, :])

    def apply(self, X: np.ndarray) -> np.ndarray:
        return self.walk_matrix() @ X


def _tie_sets_for_edge(vals: np.ndarray, eps_tie: float):
    """Argmax/argmin index sets within one edge; None marks a flat edge."""
    vmax = vals.max()
    vmin = vals.min()
    rng = vmax - vmin
    if rng <= 0.0:
        return None
    thr = eps_tie * rng
    S = np.nonzero(vals >= vmax - thr)[0]
    R = np.nonzero(vals <= vmin + thr)[0]
    if np.intersect1d(S, R).size:
        return None
    return S, R


def support_graph(H: Hypergraph, X, eps_tie: float = DEFAULT_EPS_TIE) -> SupportGraph:
    """Build G_X: bipartite argmax-argmin completion per edge plus self-loops.

    A fully flat edge (argmax and argmin sets intersect) contributes only to
    self-loops. Self-loop weights are d_v minus the incident pair weight,
    which is nonnegative by construction.
    """
    if eps_tie < 0:
        raise HypergraphError("eps_tie must be nonnegative")
    X = np.asarray(X, dtype=float)
    if X.shape != (H.n,):
        raise HypergraphError(f"vector has shape {X.shape}, expected ({H.n},)")
    if not np.all(np.isfinite(X)):
        raise HypergraphError("vector entries must be finite")
    pairs: list[tuple[int, int, float]] = []
    ties = []
    incident = np.zeros(H.n)
    for e, w in zip(H.edges, H.weights):
        idx = np.asarray(e)
        local = _tie_sets_for_edge(X[idx], eps_tie)
        if local is None:
            ties.append((tuple(e), tuple(e)))
            continue
        S, R = idx[local[0]], idx[local[1]]
        ties.append((tuple(int(v) for v in S), tuple(int(v) for v in R)))
        pw = w / (len(S) * len(R))
        for i in S:
            for j in R:
                pairs.append((int(i), int(j), pw))
        incident[S] += w / len(S)
        incident[R] += w / len(R)
    loops = np.maximum(H.degrees - incident, 0.0)
    return SupportGraph(n=H.n, pairs=pairs, self_loops=loops,
                        tie_sets=ties, degrees=H.degrees)


def _support_adjacency_apply(H: Hypergraph, cfg: np.ndarray, val: np.ndarray,
                             eps_tie: float) -> np.ndarray:
    """G_{cfg} @ val per batch row: tie sets from ``cfg``, applied to ``val``.

    Both arguments have shape (B, n); self-loop padding is included.
    """
    out = np.zeros_like(val)
    incident = np.zeros_like(val)
    for e, w in zip(H.edges, H.weights):
        idx = np.asarray(e)
        vals = cfg[:, idx]
        vmax = vals.max(axis=1)
        vmin = vals.min(axis=1)
        rng = vmax - vmin
        thr = eps_tie * rng
        S = vals >= (vmax - thr)[:, None]
        R = vals <= (vmin + thr)[:, None]
        active = ~(S & R).any(axis=1) & (rng > 0.0)
        nS = S.sum(axis=1)
        nR = R.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            coef = np.where(active, w / (nS * nR), 0.0)
            wS = np.where(active, w / nS, 0.0)
            wR = np.where(active, w / nR, 0.0)
        vd = val[:, idx]
        sum_r = (R * vd).sum(axis=1)
        sum_s = (S * vd).sum(axis=1)
        out[:, idx] += S * (coef * sum_r)[:, None] + R * (coef * sum_s)[:, None]
        incident[:, idx] += S * wS[:, None] + R * wR[:, None]
    out += (H.degrees[None, :] - incident) * val
    return out


def _as_batch(H: Hypergraph, X) -> tuple[np.ndarray, bool]:
    X = np.asarray(X, dtype=float)
    single = X.ndim == 1
    X2 = X[None, :] if single else X
    if X2.shape[1] != H.n:
        raise HypergraphError(f"vector length {X2.shape[1]} != n={H.n}")
    return X2, single


def markov_apply(H: Hypergraph, X, eps_tie: float = DEFAULT_EPS_TIE) -> np.ndarray:
    """M(X) = A_X X with A_X = G_X D^-1, without materializing A_X.

    This is the mass-transport (column-stochastic) action used by the
    dispersion process; it fixes the stationary distribution. Accepts a
    single vector (n,) or a batch (B, n); the support graph is recomputed
    per row.
    """
    if eps_tie < 0:
        raise HypergraphError("eps_tie must be nonnegative")
    X2, single = _as_batch(H, X)
    out = _support_adjacency_apply(H, X2, X2 / H.degrees[None, :], eps_tie)
    return out[0] if single else out


def markov_apply_harmonic(H: Hypergraph, Y, eps_tie: float = DEFAULT_EPS_TIE) -> np.ndarray:
    """D^-1 G_Y Y: the neighbor-averaging (row-stochastic) action.

    The transpose convention of :func:`markov_apply`; identical on regular
    hypergraphs. Eigenvectors of I minus this action are the vertex-scale
    form of the spectral machinery's eigenpairs.
    """
    if eps_tie < 0:
        raise HypergraphError("eps_tie must be nonnegative")
    Y2, single = _as_batch(H, Y)
    out = _support_adjacency_apply(H, Y2, Y2, eps_tie) / H.degrees[None, :]
    return out[0] if single else out


def laplacian_apply(H: Hypergraph, X, eps_tie: float = DEFAULT_EPS_TIE) -> np.ndarray:
    """L(X) = X - M(X)."""
    X = np.asarray(X, dtype=float)
    return X - markov_apply(H, X, eps_tie)


def markov_power(H: Hypergraph, X, t: int, lazy: bool = False,
                 eps_tie: float = DEFAULT_EPS_TIE) -> np.ndarray:
    """M^t(X), or ((I + M)/2)^t(X) when lazy."""
    Y = np.asarray(X, dtype=float)
    for _ in range(int(t)):
        MY = markov_apply(H, Y, eps_tie)
        Y = 0.5 * (Y + MY) if lazy else MY
    return Y


def rayleigh(H: Hypergraph, X) -> float:
    """R(X) = sum_e w(e) max_{i,j in e} (X_i - X_j)^2 / sum_i d_i X_i^2.

    The explicit max-over-pairs form is used rather than X^T L(X) so the
    value does not depend on the tie tolerance; it always lies in [0, 2].
    """
    X = np.asarray(X, dtype=float)
    if X.shape != (H.n,):
        raise HypergraphError(f"vector has shape {X.shape}, expected ({H.n},)")
    denom = float(np.dot(H.degrees, X * X))
    if denom <= 0.0:
        raise HypergraphError("rayleigh quotient undefined for the zero vector")
    num = 0.0
    for e, w in zip(H.edges, H.weights):
        vals = X[list(e)]
        num += w * float(vals.max() - vals.min()) ** 2
    return num / denom


def rayleigh_numerator(H: Hypergraph, X) -> float:
    """sum_e w(e) max_{i,j in e}(X_i - X_j)^2, the edge-stretch of X."""
    X = np.asarray(X, dtype=float)
    num = 0.0
    for e, w in zip(H.edges, H.weights):
        vals = X[list(e)]
        num += w * float(vals.max() - vals.min()) ** 2
    return num


def support_signature(H: Hypergraph, X, eps_tie: float = DEFAULT_EPS_TIE) -> tuple:
    """Hashable per-edge (S_e, R_e) description; changes when G_X changes."""
    X = np.asarray(X, dtype=float)
    sig = []
    for e in H.edges:
        idx = np.asarray(e)
        local = _tie_sets_for_edge(X[idx], eps_tie)
        if local is None:
            sig.append(None)
        else:
            sig.append((tuple(int(v) for v in idx[local[0]]),
                        tuple(int(v) for v in idx[local[1]])))
    return tuple(sig)
