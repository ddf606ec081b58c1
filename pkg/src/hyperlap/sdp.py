"""Convex relaxations used by the eigenvalue and sparsest-cut pipelines.

Both programs optimize over the Gram matrix of a vector embedding, with the
per-edge max linearized through epigraph variables: t_e upper-bounds
||u_i - u_j||^2 for every pair inside edge e, and the objective is
sum_e w(e) t_e. Solutions are factored into explicit embedding vectors.
"""

from __future__ import annotations

import itertools

import numpy as np

TRIANGLE_FULL_MAX_N = 60
_SOLVER_ORDER = ("CLARABEL", "SCS", "ECOS", "CVXOPT")


class SdpError(RuntimeError):
    """SDP solve failed or returned no usable solution."""


def _pair_expr(U, i: int, j: int):
    return U[i, i] + U[j, j] - 2 * U[i, j]


def _solve(problem) -> None:
    import cvxpy as cp

    last = None
    for name in _SOLVER_ORDER:
        if name not in cp.installed_solvers():
            continue
        try:
            kwargs = {}
            if name == "SCS":
                kwargs = {"eps": 1e-8, "max_iters": 50000}
            problem.solve(solver=name, **kwargs)
        except (cp.SolverError, Exception) as exc:  # noqa: BLE001 - try next solver
            last = exc
            continue
        if problem.status in ("optimal", "optimal_inaccurate"):
            return
    raise SdpError(f"no solver produced a solution (last error: {last})")


def _factor(U: np.ndarray, rank_tol: float = 1e-9) -> np.ndarray:
    """Rows are embedding vectors whose Gram matrix approximates U."""
    U = 0.5 * (U + U.T)
    vals, vecs = np.linalg.eigh(U)
    vals = np.clip(vals, 0.0, None)
    keep = vals > rank_tol * max(vals.max(), 1e-30)
    if not keep.any():
        keep = vals == vals.max()
    return vecs[:, keep] * np.sqrt(vals[keep])[None, :]


def solve_rayleigh_sdp(H, priors: np.ndarray) -> tuple[float, np.ndarray]:
    """Relaxation of min R(X) over X orthogonal to the prior vectors.

    minimize   sum_e w(e) max_{i,j in e} ||u_i - u_j||^2
    subject to sum_i d_i ||u_i||^2 = 1
               sum_i prior_l(i) u_i = 0   for every prior

    The norm constraint is degree-weighted so that plugging in any unit
    vector of the degree norm gives exactly its Rayleigh quotient; the
    orthogonality constraints become u^T U u = 0 on the Gram matrix.
    Returns (optimal value, n x k factor with rows u_i).
    """
    import cvxpy as cp

    n = H.n
    U = cp.Variable((n, n), PSD=True)
    t = cp.Variable(H.m)
    cons = [cp.sum(cp.multiply(np.asarray(H.degrees), cp.diag(U))) == 1]
    for ei, e in enumerate(H.edges):
        for i, j in itertools.combinations(e, 2):
            cons.append(t[ei] >= _pair_expr(U, i, j))
    for u in np.atleast_2d(priors):
        cons.append(cp.quad_form(u, U) <= 1e-12)
    obj = cp.Minimize(cp.sum(cp.multiply(np.asarray(H.weights), t)))
    prob = cp.Problem(obj, cons)
    _solve(prob)
    val = float(prob.value)
    return max(val, 0.0), _factor(np.asarray(U.value))


def _triangle_constraints(U, n: int, rng=None, sample: int | None = None):
    """l2^2 triangle inequalities U_vv - U_uv - U_vw + U_uw >= 0."""
    cons = []
    if sample is None:
        triples = ((u, v, w) for v in range(n)
                   for u, w in itertools.combinations(
                       [x for x in range(n) if x != v], 2))
    else:
        def _draw():
            for _ in range(sample):
                u, v, w = rng.choice(n, size=3, replace=False)
                yield int(u), int(v), int(w)
        triples = _draw()
    for u, v, w in triples:
        cons.append(U[v, v] - U[u, v] - U[v, w] + U[u, w] >= 0)
    return cons


def solve_demands_sdp(H, pairs: list[tuple[int, int]],
                      seed: int = 0) -> tuple[float, np.ndarray]:
    """Relaxation of the sparsest cut with general demands.

    minimize   sum_e w(e) max_{i,j in e} ||u_i - u_j||^2
    subject to sum_{(s,t) in D} ||u_s - u_t||^2 = 1
               l2^2 triangle inequalities

    Triangle inequalities are enforced on all triples up to n = 60 and on a
    random sample beyond that. Returns (optimal value, factor).
    """
    import cvxpy as cp

    n = H.n
    U = cp.Variable((n, n), PSD=True)
    t = cp.Variable(H.m)
    cons = [sum(_pair_expr(U, s, tt) for s, tt in pairs) == 1]
    for ei, e in enumerate(H.edges):
        for i, j in itertools.combinations(e, 2):
            cons.append(t[ei] >= _pair_expr(U, i, j))
    if n <= TRIANGLE_FULL_MAX_N:
        cons += _triangle_constraints(U, n)
    else:
        from .seeding import rng_for

        cons += _triangle_constraints(U, n, rng=rng_for(seed, 0x7A1),
                                      sample=20 * n * n)
    obj = cp.Minimize(cp.sum(cp.multiply(np.asarray(H.weights), t)))
    prob = cp.Problem(obj, cons)
    _solve(prob)
    return max(float(prob.value), 0.0), _factor(np.asarray(U.value))
