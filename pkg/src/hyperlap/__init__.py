"""Hypergraph spectral toolkit.

A nonlinear Markov operator for hypergraphs, the continuous-time dispersion
process it generates, eigenvalue computation (exact enumeration, projected
iteration, SDP approximation), and the expansion / partitioning algorithms
built on them.
"""

from .hypergraph import (
    BRUTE_FORCE_MAX_N,
    CutResult,
    DisconnectedError,
    Hypergraph,
    HypergraphError,
    InvalidCutError,
    ParseError,
    SizeGuardError,
    brute_force_expansion,
    build,
    cut_weight,
    diameter_bfs,
    expansion,
    parse_hmetis,
    serialize_hmetis,
    stationary_distribution,
)
from .operator import (
    DEFAULT_EPS_TIE,
    SupportGraph,
    laplacian_apply,
    markov_apply,
    markov_apply_harmonic,
    markov_power,
    rayleigh,
    rayleigh_numerator,
    support_graph,
    support_signature,
)
from .spectral import (
    BudgetExceededError,
    EigenPair,
    SpectralEmbedding,
    density_scale,
    eig_sequence,
    enumeration_count,
    exact_eigs,
    iterative_eig,
    sdp_eig_k,
    spectral_embedding,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
