"""Exact and interval arithmetic kernel."""

from .interval import IntervalScalar, interval_eval_power, power_of_exact
from .poly import (
    Polynomial,
    certify_poly_positive,
    count_roots,
    gen_binomial,
    poly_identity_check,
    sturm_chain,
)
from .rational import parse_rational
from .verdict import Method, State, Verdict

__all__ = [
    "IntervalScalar",
    "Method",
    "Polynomial",
    "State",
    "Verdict",
    "certify_poly_positive",
    "count_roots",
    "gen_binomial",
    "interval_eval_power",
    "parse_rational",
    "poly_identity_check",
    "power_of_exact",
    "sturm_chain",
]
