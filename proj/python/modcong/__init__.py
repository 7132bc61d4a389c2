"""Congruences between modular forms modulo prime powers."""

from ._core import (
    ArithmeticError,
    InputError,
    ResourceBoundExceeded,
    adjgroup_suite,
    allowed_reductions,
    ap_table,
    big_image_verdict,
    classify,
    congruent_mod_pn,
    curve_17a1,
    dims,
    frob_order_pair,
    is_auxiliary,
    lemma_v,
    level_raising_witness,
    modulus_exponent_bound,
    plan,
    quadratic_roots,
    search_auxiliary,
    verify_paper_example,
)

__all__ = [
    "ArithmeticError",
    "InputError",
    "ResourceBoundExceeded",
    "adjgroup_suite",
    "allowed_reductions",
    "ap_table",
    "big_image_verdict",
    "classify",
    "congruent_mod_pn",
    "curve_17a1",
    "dims",
    "frob_order_pair",
    "is_auxiliary",
    "lemma_v",
    "level_raising_witness",
    "modulus_exponent_bound",
    "plan",
    "quadratic_roots",
    "search_auxiliary",
    "verify_paper_example",
]
