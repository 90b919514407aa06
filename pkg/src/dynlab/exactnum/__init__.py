"""Exact arithmetic: Q, polynomials, rational functions, binary forms and extension towers."""

from .branches import split_branches
from .extension import AlgElem, Extension, Split, alg_invert, extension_from_text
from .fields import QQ, is_rational_context
from .forms import BiForm, distinct_linear_factor_count, form_divides, form_gcd, form_radical, form_resultant
from .poly import (
    UniPoly,
    determinant,
    poly_gcd,
    poly_radical,
    poly_resultant,
    poly_xgcd,
    radical_divides,
    squarefree_decomposition,
    sylvester_matrix,
)
from .ratfunc import RatFunc
from .roots import rational_roots

__all__ = [
    "QQ",
    "is_rational_context",
    "UniPoly",
    "RatFunc",
    "BiForm",
    "Extension",
    "AlgElem",
    "Split",
    "alg_invert",
    "extension_from_text",
    "split_branches",
    "poly_gcd",
    "poly_xgcd",
    "poly_resultant",
    "poly_radical",
    "radical_divides",
    "squarefree_decomposition",
    "sylvester_matrix",
    "determinant",
    "form_gcd",
    "form_radical",
    "form_divides",
    "form_resultant",
    "distinct_linear_factor_count",
    "rational_roots",
]
