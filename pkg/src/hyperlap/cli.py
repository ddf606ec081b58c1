"""Batch command-line front end.

Reads hMETIS .hgr hypergraphs (edge-list graphs for vertexexp), writes JSON
or CSV to stdout or --out. A fixed seed makes every randomized subcommand
byte-reproducible; the default seed comes from HYPERLAP_SEED.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import verify as verify_mod
from .dispersion import DispersionConfig, bottleneck_cut, mixing_time, simulate
from .hypergraph import (
    Hypergraph,
    HypergraphError,
    ParseError,
    parse_hmetis,
    serialize_hmetis,
    stationary_distribution,
)
from .partition import (
    DemandInstance,
    multi_partition,
    small_set_expansion,
    sparsest_cut_demands,
    sweep_cut,
)
from .spectral import density_scale, eig_sequence
from .vertexexp import (
    bht_lambda_inf,
    lambda_inf,
    parse_edge_list,
    reduce_to_hypergraph,
    reduction_report,
)

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_CONFIG = 2


def _load(path: str) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hmetis(fh.read())


def _emit(args, payload: dict | str) -> None:
    if isinstance(payload, dict):
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = payload
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pair_json(p) -> dict:
    return {
        "value": float(p.value),
        "vector": [float(x) for x in p.vector],
        "method": p.method,
        "consistency_residual": float(p.consistency_residual),
        "converged": bool(p.converged),
        "glued": bool(p.glued),
    }


def _start_vector(H: Hypergraph, spec: str) -> np.ndarray:
    if spec == "stationary":
        return stationary_distribution(H)
    if spec == "uniform":
        return np.full(H.n, 1.0 / H.n)
    if spec.startswith("vertex:"):
        v = int(spec.split(":", 1)[1]) - 1
        if not 0 <= v < H.n:
            raise HypergraphError(f"start vertex {v + 1} out of range")
        mu = np.zeros(H.n)
        mu[v] = 1.0
        return mu
    raise HypergraphError(f"unknown start distribution {spec!r}")


def cmd_info(args) -> int:
    H = _load(args.path)
    _emit(args, {
        "command": "info",
        "n": H.n, "m": H.m, "r_min": H.r_min, "r_max": H.r_max,
        "total_volume": float(H.total_volume),
        "connected": H.is_connected(),
        "degrees": [float(d) for d in H.degrees],
    })
    return EXIT_OK


def cmd_eigs(args) -> int:
    H = _load(args.path)
    seq = eig_sequence(H, args.k, method=args.method, seed=args.seed)
    _emit(args, {
        "command": "eigs", "seed": args.seed, "method": args.method,
        "k": args.k, "eigenpairs": [_pair_json(p) for p in seq],
    })
    return EXIT_OK


def cmd_dispersion(args) -> int:
    H = _load(args.path)
    mu0 = _start_vector(H, args.start)
    cfg = DispersionConfig(dt=args.dt, T=args.T, delta=args.delta)
    trace = simulate(H, mu0, cfg)
    lines = ["t,rayleigh,l2_norm,l1_dist"]
    for t, r, l2, l1 in zip(trace.times, trace.rayleighs,
                            trace.l2_norms, trace.l1_dists):
        lines.append(f"{t:.6f},{r!r},{l2!r},{l1!r}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_mix(args) -> int:
    H = _load(args.path)
    mu0 = _start_vector(H, args.start)
    cfg = DispersionConfig(dt=args.dt, T=args.T)
    lam2 = args.lambda2
    if lam2 is None and H.n >= 2:
        lam2 = eig_sequence(H, 2, method="auto", seed=args.seed)[1].value
    res = mixing_time(H, mu0, delta=args.delta, cfg=cfg, lambda2_estimate=lam2)
    cut = bottleneck_cut(H, mu0, cfg)
    _emit(args, {
        "command": "mix", "seed": args.seed,
        "mixing_time": None if math.isinf(res.time) else res.time,
        "mixed": res.mixed, "final_distance": res.final_distance,
        "delta": res.delta, "bound": res.bound, "within_bound": res.within_bound,
        "bottleneck_cut": cut.to_json(),
    })
    return EXIT_OK


def cmd_cut(args) -> int:
    H = _load(args.path)
    pair = eig_sequence(H, 2, method=args.method, seed=args.seed)[1]
    cut = sweep_cut(H, density_scale(H, pair.vector))
    _emit(args, {
        "command": "cut", "seed": args.seed, "lambda2": float(pair.value),
        "cheeger_lower": float(pair.value) / 2.0,
        "cheeger_upper": math.sqrt(2.0 * max(pair.value, 0.0)),
        "cut": cut.to_json(),
    })
    return EXIT_OK


def cmd_sse(args) -> int:
    H = _load(args.path)
    cut = small_set_expansion(H, args.k, trials=args.trials, seed=args.seed,
                              method=args.method)
    _emit(args, {
        "command": "sse", "seed": args.seed, "k": args.k,
        "size_cap": 24.0 * H.n / args.k, "cut": cut.to_json(),
    })
    return EXIT_OK


def cmd_kpart(args) -> int:
    H = _load(args.path)
    res = multi_partition(H, args.k, seed=args.seed,
                          paper_constants=args.paper_constants,
                          method=args.method)
    _emit(args, {
        "command": "kpart", "seed": args.seed, "k": args.k,
        "complete": res.complete,
        "max_expansion": None if math.isnan(res.max_expansion) else res.max_expansion,
        "sets": [[int(v) for v in S] for S in res.sets],
        "expansions": [float(x) for x in res.expansions],
    })
    return EXIT_OK


def _parse_pairs(path: str, n: int) -> list[tuple[int, int]]:
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise ParseError(line_no, "expected 's t' per line")
            s, t = int(tokens[0]) - 1, int(tokens[1]) - 1
            if not (0 <= s < n and 0 <= t < n):
                raise ParseError(line_no, "demand endpoint out of range")
            pairs.append((s, t))
    return pairs


def cmd_demands(args) -> int:
    H = _load(args.path)
    pairs = _parse_pairs(args.pairs, H.n)
    inst = DemandInstance(hypergraph=H, pairs=tuple(pairs))
    res = sparsest_cut_demands(inst, seed=args.seed)
    _emit(args, {
        "command": "demands", "seed": args.seed,
        "pairs": [[s + 1, t + 1] for s, t in pairs],
        "sdp_value": float(res.sdp_value), "ratio": float(res.ratio),
        "cut": res.cut.to_json(),
    })
    return EXIT_OK


def cmd_vertexexp(args) -> int:
    with open(args.path, "r", encoding="utf-8") as fh:
        G = parse_edge_list(fh.read())
    H = reduce_to_hypergraph(G)
    if args.hgr_out:
        with open(args.hgr_out, "w", encoding="utf-8") as fh:
            fh.write(serialize_hmetis(H))
    lam_inf = lambda_inf(G, method=args.method, seed=args.seed)
    payload = {"command": "vertexexp", "seed": args.seed,
               "lambda_inf": float(lam_inf)}
    if G.is_regular() and G.n <= 14:
        pair = eig_sequence(H, 2, method="auto", seed=args.seed)[1]
        bht = bht_lambda_inf(G, extra_vectors=[density_scale(H, pair.vector)])
        rep = reduction_report(G, pair.value, lam_inf, bht_value=bht)
        payload.update({
            "bht_lambda_inf": float(bht),
            "lambda2_reduction": float(pair.value),
            "phi_vertex": float(rep.phi_vertex),
            "phi_hypergraph": float(rep.phi_hypergraph),
            "factor_four_ok": rep.factor_four_ok,
            "sandwich_ok": rep.sandwich_ok,
            "bht_sandwich_ok": rep.bht_sandwich_ok,
        })
    _emit(args, payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    scale = verify_mod.FULL if args.corpus == "full" else verify_mod.SMALL
    reports = verify_mod.run_all(scale, args.seed)
    if args.json:
        _emit(args, {
            "command": "verify", "corpus": args.corpus, "seed": args.seed,
            "criteria": [{"key": r.key, "title": r.title, "passed": r.passed,
                          "detail": r.detail} for r in reports],
        })
    else:
        _emit(args, verify_mod.report_text(reports, scale, args.seed))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_COMPUTE


def build_parser() -> argparse.ArgumentParser:
    default_seed = int(os.environ.get("HYPERLAP_SEED", "0"))
    parser = argparse.ArgumentParser(
        prog="hyperlap",
        description="Hypergraph spectral toolkit: dispersion, eigenvalues, cuts.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--seed", type=int, default=default_seed)
        p.add_argument("--out", help="write output to this file instead of stdout")
        return p

    p = add("info", cmd_info, help="instance summary")
    p.add_argument("path")

    p = add("eigs", cmd_eigs, help="first k eigenpairs")
    p.add_argument("path")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--method", default="auto",
                   choices=["exact", "iter", "iterative", "sdp", "auto"])

    p = add("dispersion", cmd_dispersion, help="dispersion trace as CSV")
    p.add_argument("path")
    p.add_argument("--start", default="uniform")
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--T", type=float, default=10.0)
    p.add_argument("--delta", type=float, default=0.01)

    p = add("mix", cmd_mix, help="mixing time, bound check, bottleneck cut")
    p.add_argument("path")
    p.add_argument("--start", default="vertex:1")
    p.add_argument("--dt", type=float, default=0.005)
    p.add_argument("--T", type=float, default=60.0)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--lambda2", type=float, default=None)

    p = add("cut", cmd_cut, help="sweep cut from the second eigenvector")
    p.add_argument("path")
    p.add_argument("--method", default="auto",
                   choices=["exact", "iter", "iterative", "sdp", "auto"])

    p = add("sse", cmd_sse, help="small-set expansion rounding")
    p.add_argument("path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=48)
    p.add_argument("--method", default="auto")

    p = add("kpart", cmd_kpart, help="multi-way low-expansion partition")
    p.add_argument("path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--paper-constants", action="store_true")
    p.add_argument("--method", default="auto")

    p = add("demands", cmd_demands, help="sparsest cut with general demands")
    p.add_argument("path")
    p.add_argument("--pairs", required=True,
                   help="file with one 's t' demand pair per line (1-based)")

    p = add("vertexexp", cmd_vertexexp, help="vertex expansion via the reduction")
    p.add_argument("path", help="edge-list graph file: 'u v [w]' per line")
    p.add_argument("--hgr-out", help="dump the reduction hypergraph as .hgr")
    p.add_argument("--method", default="exact", choices=["exact", "iter"])

    p = add("verify", cmd_verify, help="run the acceptance property suite")
    p.add_argument("--corpus", default="small", choices=["small", "full"])
    p.add_argument("--json", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (HypergraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
