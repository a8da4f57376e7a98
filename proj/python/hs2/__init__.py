"""Hypergraph cut recovery with label and same-class queries."""

from ._hs2 import (
    Hs2Error,
    Hypergraph,
    LabelFunction,
    analyze,
    bernoulli_kl,
    compare_with_ce,
    cut_edges,
    hsbm,
    kl_lower_bound,
    noisy_budget,
    q_star,
    q_star_pair,
    run_experiment,
    run_point,
    solve_min_M,
    witness_bound,
)

__all__ = [
    "Hs2Error",
    "Hypergraph",
    "LabelFunction",
    "analyze",
    "bernoulli_kl",
    "compare_with_ce",
    "cut_edges",
    "hsbm",
    "kl_lower_bound",
    "noisy_budget",
    "q_star",
    "q_star_pair",
    "run_experiment",
    "run_point",
    "solve_min_M",
    "witness_bound",
]
