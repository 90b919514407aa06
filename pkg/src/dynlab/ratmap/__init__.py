"""Rational maps of P^1: parsing, iteration, conjugation, fixed and periodic points."""

from .fixed import (
    FixedPointRecord,
    NotFound,
    PeriodWitness,
    critical_point_count,
    exact_period_polynomial,
    find_marginal_preperiodic,
    fixed_points,
    has_exact_period_point,
    multiplier,
    ramification_at_infinity,
    totally_ramified_polynomial,
)
from .maps import FormPair, Mobius, ProjPoint, RationalMap
from .parse import parse_field, parse_map, parse_polynomial, parse_ratfunc, parse_scalar

__all__ = [
    "RationalMap",
    "Mobius",
    "ProjPoint",
    "FormPair",
    "parse_map",
    "parse_field",
    "parse_ratfunc",
    "parse_polynomial",
    "parse_scalar",
    "FixedPointRecord",
    "PeriodWitness",
    "NotFound",
    "fixed_points",
    "multiplier",
    "critical_point_count",
    "totally_ramified_polynomial",
    "ramification_at_infinity",
    "has_exact_period_point",
    "exact_period_polynomial",
    "find_marginal_preperiodic",
]
