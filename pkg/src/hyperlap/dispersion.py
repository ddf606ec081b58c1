"""Continuous-time hypergraph dispersion: explicit Euler on du/dt = -L(u).

One step maps a vector through ((1 - dt) I + dt M), optionally followed by
a subspace projection; the support graph is rebuilt every step, and the
times at which it changes are logged at step resolution. The process
conserves probability mass, its l2 norm decays at rate twice the Rayleigh
quotient, and the quotient itself is nonincreasing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hypergraph import CutResult, Hypergraph, HypergraphError, stationary_distribution
from .operator import DEFAULT_EPS_TIE, markov_apply, rayleigh

TRACE_EVERY_STEP_MAX_N = 64


class _Stepper:
    """Flat per-edge index arrays so one step costs a handful of numpy calls.

    All per-edge maxima, tie masks, and walk contributions are computed with
    reduceat over the concatenated edge-membership array.
    """

    def __init__(self, H: Hypergraph, eps_tie: float):
        self.H = H
        self.eps = eps_tie
        self.idx = np.concatenate([np.asarray(e) for e in H.edges])
        sizes = np.array([len(e) for e in H.edges])
        self.off = np.concatenate([[0], np.cumsum(sizes)[:-1]])
        self.sizes = sizes
        self.w = H.weights
        self.d = H.degrees

    def tie_masks(self, x: np.ndarray):
        vals = x[self.idx]
        mx = np.maximum.reduceat(vals, self.off)
        mn = np.minimum.reduceat(vals, self.off)
        rng = mx - mn
        thr = self.eps * rng
        S = vals >= np.repeat(mx - thr, self.sizes)
        R = vals <= np.repeat(mn + thr, self.sizes)
        overlap = np.add.reduceat(S & R, self.off) > 0
        active = (rng > 0.0) & ~overlap
        return S, R, active, rng

    def signature(self, masks) -> bytes:
        S, R, active, _ = masks
        return S.tobytes() + R.tobytes() + active.tobytes()

    def rayleigh_parts(self, x: np.ndarray, rng: np.ndarray):
        num = float(self.w @ (rng * rng))
        den = float(self.d @ (x * x))
        return num, den

    def apply(self, x: np.ndarray, masks) -> np.ndarray:
        S, R, active, _ = masks
        xd = x / self.d
        vd = xd[self.idx]
        nS = np.add.reduceat(S, self.off)
        nR = np.add.reduceat(R, self.off)
        with np.errstate(divide="ignore", invalid="ignore"):
            coef = np.where(active, self.w / (nS * nR), 0.0)
            wS = np.where(active, self.w / nS, 0.0)
            wR = np.where(active, self.w / nR, 0.0)
        sum_r = np.add.reduceat(np.where(R, vd, 0.0), self.off)
        sum_s = np.add.reduceat(np.where(S, vd, 0.0), self.off)
        contrib = S * np.repeat(coef * sum_r, self.sizes) \
            + R * np.repeat(coef * sum_s, self.sizes)
        inc = S * np.repeat(wS, self.sizes) + R * np.repeat(wR, self.sizes)
        out = np.zeros_like(x)
        incident = np.zeros_like(x)
        np.add.at(out, self.idx, contrib)
        np.add.at(incident, self.idx, inc)
        out += (self.d - incident) * xd
        return out


@dataclass
class DispersionConfig:
    """Step size, horizon, mixing threshold, and optional subspace projector.

    ``projector`` is an orthonormal basis (n x k) of the invariant subspace;
    it must be idempotent as a projection within 1e-9.
    """

    dt: float = 0.01
    T: float = 10.0
    delta: float = 0.01
    projector: np.ndarray | None = None
    eps_tie: float = DEFAULT_EPS_TIE
    record_every: int | None = None

    def validate(self, n: int) -> None:
        if not 0 < self.dt < 1:
            raise HypergraphError("dt must lie in (0, 1): the lazy step stays PSD")
        if not 0 < self.delta < 1:
            raise HypergraphError("delta must lie in (0, 1)")
        if self.projector is not None:
            Q = np.asarray(self.projector, dtype=float)
            if Q.ndim != 2 or Q.shape[0] != n:
                raise HypergraphError("projector must be an n x k basis")
            P = Q @ Q.T
            if not np.allclose(P @ P, P, atol=1e-9):
                raise HypergraphError("projector is not idempotent")


@dataclass
class DispersionTrace:
    times: list[float] = field(default_factory=list)
    vectors: list[np.ndarray] = field(default_factory=list)
    rayleighs: list[float] = field(default_factory=list)
    l2_norms: list[float] = field(default_factory=list)
    l1_dists: list[float] = field(default_factory=list)
    support_changes: list[float] = field(default_factory=list)

    def sample(self, t, vec, r, l2, l1):
        self.times.append(float(t))
        self.vectors.append(np.array(vec))
        self.rayleighs.append(float(r))
        self.l2_norms.append(float(l2))
        self.l1_dists.append(float(l1))


@dataclass
class MixingResult:
    time: float
    mixed: bool
    final_distance: float
    delta: float
    bound: float | None = None
    within_bound: bool | None = None


def step(H: Hypergraph, omega: np.ndarray, cfg: DispersionConfig) -> np.ndarray:
    """One Euler step omega' = Pi ((1 - dt) omega + dt M(omega))."""
    cfg.validate(H.n)
    omega = np.asarray(omega, dtype=float)
    out = (1.0 - cfg.dt) * omega + cfg.dt * markov_apply(H, omega, cfg.eps_tie)
    if cfg.projector is not None:
        Q = cfg.projector
        out = Q @ (Q.T @ out)
    return out


def _record_steps(cfg: DispersionConfig, n: int, total_steps: int) -> set[int]:
    if cfg.record_every is not None:
        stride = max(1, int(cfg.record_every))
        idx = set(range(0, total_steps + 1, stride))
    elif n <= TRACE_EVERY_STEP_MAX_N:
        idx = set(range(total_steps + 1))
    else:
        idx = {0}
        t = 1.0
        while t <= total_steps:
            idx.add(int(t))
            t *= 1.05
    idx.add(total_steps)
    return idx


def simulate(H: Hypergraph, mu0, cfg: DispersionConfig) -> DispersionTrace:
    """Run the dispersion process and record the configured samples.

    Without a projector this evolves a probability distribution and records
    the l1 distance to the stationary distribution; with a projector it
    evolves the subspace component and records its l1 norm instead.
    """
    cfg.validate(H.n)
    x = np.asarray(mu0, dtype=float).copy()
    if x.shape != (H.n,):
        raise HypergraphError(f"start vector has shape {x.shape}, expected ({H.n},)")
    if cfg.projector is not None:
        Q = cfg.projector
        if np.linalg.norm(Q @ (Q.T @ x) - x) > 1e-6 * max(np.linalg.norm(x), 1.0):
            raise HypergraphError("start vector must lie in the projector subspace")
    mu_star = stationary_distribution(H)
    total_steps = int(round(cfg.T / cfg.dt))
    record = _record_steps(cfg, H.n, total_steps)
    trace = DispersionTrace()
    stepper = _Stepper(H, cfg.eps_tie)
    Q = cfg.projector

    def l1_dist(vec):
        if Q is None:
            return float(np.abs(vec - mu_star).sum())
        return float(np.abs(vec).sum())

    masks = stepper.tie_masks(x)
    sig = stepper.signature(masks)

    def quotient(vec, rng):
        num, den = stepper.rayleigh_parts(vec, rng)
        return num / den if den > 1e-300 else 0.0

    if 0 in record:
        trace.sample(0.0, x, quotient(x, masks[3]), np.linalg.norm(x), l1_dist(x))
    for k in range(1, total_steps + 1):
        x = (1.0 - cfg.dt) * x + cfg.dt * stepper.apply(x, masks)
        if Q is not None:
            x = Q @ (Q.T @ x)
        masks = stepper.tie_masks(x)
        new_sig = stepper.signature(masks)
        if new_sig != sig:
            trace.support_changes.append(k * cfg.dt)
            sig = new_sig
        if k in record:
            trace.sample(k * cfg.dt, x, quotient(x, masks[3]),
                         np.linalg.norm(x), l1_dist(x))
    return trace


def mixing_time(H: Hypergraph, mu0, delta: float | None = None,
                cfg: DispersionConfig | None = None,
                lambda2_estimate: float | None = None) -> MixingResult:
    """Smallest sampled t with ||mu_t - mu*||_1 <= delta.

    When a lambda_2 estimate is supplied the result also reports the
    log(n/delta)/lambda_2 upper bound and whether the measurement met it.
    If the horizon is exhausted the result carries mixed=False and the
    final distance.
    """
    cfg = cfg or DispersionConfig()
    if delta is None:
        delta = cfg.delta
    mu0 = np.asarray(mu0, dtype=float)
    if abs(mu0.sum() - 1.0) > 1e-9 or np.any(mu0 < -1e-12):
        raise HypergraphError("mu0 must be a probability vector")
    mu_star = stationary_distribution(H)
    bound = None
    if lambda2_estimate is not None and lambda2_estimate > 0:
        bound = math.log(H.n / delta) / lambda2_estimate
    if float(np.abs(mu0 - mu_star).sum()) <= delta:
        return MixingResult(time=0.0, mixed=True, final_distance=float(np.abs(mu0 - mu_star).sum()),
                            delta=delta, bound=bound,
                            within_bound=None if bound is None else True)
    cfg.validate(H.n)
    x = mu0.copy()
    total_steps = int(round(cfg.T / cfg.dt))
    stepper = _Stepper(H, cfg.eps_tie)
    t = 0.0
    dist = float(np.abs(x - mu_star).sum())
    for k in range(1, total_steps + 1):
        x = (1.0 - cfg.dt) * x + cfg.dt * stepper.apply(x, stepper.tie_masks(x))
        t = k * cfg.dt
        dist = float(np.abs(x - mu_star).sum())
        if dist <= delta:
            return MixingResult(time=t, mixed=True, final_distance=dist, delta=delta,
                                bound=bound,
                                within_bound=None if bound is None else (t <= bound + cfg.dt))
    return MixingResult(time=math.inf, mixed=False, final_distance=dist, delta=delta,
                        bound=bound, within_bound=None if bound is None else False)


def slow_mixing_distribution(H: Hypergraph, X) -> np.ndarray:
    """A slow-to-mix start distribution built from a test vector X.

    Requires a regular hypergraph. Shifts X so its positive and negative
    supports are balanced, keeps the centered positive part omega, and
    returns mu = 1/n + omega / (2 ||omega||_1), which satisfies
    ||mu - 1/n||_1 = 1/2 and R(mu - 1/n) <= 4 R(X_centered).
    """
    d = H.degrees
    if not np.allclose(d, d[0], rtol=1e-12, atol=1e-12):
        raise HypergraphError("slow-mixing construction requires a regular hypergraph")
    X = np.asarray(X, dtype=float)
    n = H.n
    if np.allclose(X, X[0]):
        raise HypergraphError("constant vectors give no slow-mixing direction")
    order = np.sort(X)
    median = order[(n - 1) // 2] if n % 2 else 0.5 * (order[n // 2 - 1] + order[n // 2])
    shifted = X - median
    pos = np.maximum(shifted, 0.0)
    neg = np.maximum(-shifted, 0.0)
    if np.linalg.norm(pos) < np.linalg.norm(neg):
        shifted = -shifted
        pos = np.maximum(shifted, 0.0)
    omega = pos - pos.sum() / n
    l1 = float(np.abs(omega).sum())
    if l1 <= 0:
        raise HypergraphError("degenerate shift; vector has no positive part")
    return np.full(n, 1.0 / n) + omega / (2.0 * l1)


def bottleneck_cut(H: Hypergraph, mu0, cfg: DispersionConfig | None = None) -> CutResult:
    """Sweep-round the dispersion state at its fastest norm-decay time.

    Runs the process from mu0, tracks omega_t (the component orthogonal to
    the stationary distribution), picks the sample minimizing
    log(||omega_0||^2 / ||omega_t||^2) / t, and sweep-rounds that vector.
    The returned side has stationary mass at most 1/2.
    """
    from .partition import sweep_cut

    cfg = cfg or DispersionConfig(dt=0.01, T=10.0)
    mu0 = np.asarray(mu0, dtype=float)
    mu_star = stationary_distribution(H)
    mu_hat = mu_star / np.linalg.norm(mu_star)
    trace = simulate(H, mu0, cfg)
    omegas = [v - mu_hat * float(mu_hat @ v) for v in trace.vectors]
    n0 = float(np.linalg.norm(omegas[0]))
    if n0 <= 1e-300:
        raise HypergraphError("start distribution equals the stationary distribution")
    candidates = []
    for t, om in zip(trace.times, omegas):
        if t <= 0:
            continue
        nt = float(np.linalg.norm(om))
        if nt <= max(1e-12, 1e-9 * n0):
            continue
        rate = math.log((n0 * n0) / (nt * nt)) / t
        candidates.append((rate, t, om))
    candidates.sort(key=lambda c: c[0])
    cut = None
    for _, _, om in candidates + [(0.0, 0.0, omegas[0])]:
        try:
            cut = sweep_cut(H, om)
            best_omega = om
            break
        except HypergraphError:
            continue
    if cut is None:
        raise HypergraphError("dispersion state degenerated before any sweep")
    # report the side with stationary mass at most 1/2
    side = set(cut.set)
    if mu_star[list(side)].sum() > 0.5:
        side = set(range(H.n)) - side
    return CutResult(set=tuple(sorted(side)), expansion=cut.expansion,
                     ratio_type="symmetric", certificate=best_omega)
