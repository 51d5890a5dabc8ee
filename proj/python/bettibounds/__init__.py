"""Betti-number upper bounds over axiomatic complexity measures.

Thin wrapper around the C++ core; see the project README for the full
CLI and library surface.
"""

from ._core import (
    Bound,
    Formula,
    alexander_dual,
    atom_count,
    boolean_combination_bound,
    bound_for,
    build_t,
    closed_approximation,
    closed_set_bound,
    equalities_bound,
    fiber_product_bound,
    fold,
    gamma,
    kappa,
    khovanskii,
    measures,
    mixed_bound,
    mv_union_bound,
    nonstrict_bound,
    omega,
    oracle_betti,
    projection_bound,
    quantified_bound,
    sign_conditions_bound,
    t_sequence,
    term_count,
    verify,
)

__all__ = [
    "Bound",
    "Formula",
    "alexander_dual",
    "atom_count",
    "boolean_combination_bound",
    "bound_for",
    "build_t",
    "closed_approximation",
    "closed_set_bound",
    "equalities_bound",
    "fiber_product_bound",
    "fold",
    "gamma",
    "kappa",
    "khovanskii",
    "measures",
    "mixed_bound",
    "mv_union_bound",
    "nonstrict_bound",
    "omega",
    "oracle_betti",
    "projection_bound",
    "quantified_bound",
    "sign_conditions_bound",
    "t_sequence",
    "term_count",
    "verify",
]
