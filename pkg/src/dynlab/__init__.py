"""dynlab: exact arithmetic dynamics on P^1(Q).

Iterate rational maps exactly, certify that an orbit wanders, factor the
numerators of orbit differences within a budget, and check which primes are
primitive in the computed window.
"""

import sys as _sys

# reports print orbit terms as decimal strings; they routinely exceed the
# interpreter's default 4300-digit conversion guard
if hasattr(_sys, "set_int_max_str_digits"):
    _sys.set_int_max_str_digits(0)

from .classify import FamilyTag, in_B, in_E, in_F1, in_F2, in_F3, in_T, kisaka_map
from .config import RunConfig
from .errors import DynlabError
from .exactnum import QQ, BiForm, Extension, RatFunc, UniPoly
from .orbit import (
    OrbitPoint,
    Preperiodic,
    Unknown,
    Wandering,
    bad_primes,
    classify_orbit,
    congruent,
    reduce_point,
)
from .primeledger import build_diff_ledger, build_sequence_ledger, factor, primitive_factors
from .ratmap import Mobius, ProjPoint, RationalMap, parse_map
from .suites import SUITES, SuiteResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "UniPoly",
    "RatFunc",
    "BiForm",
    "Extension",
    "RationalMap",
    "Mobius",
    "ProjPoint",
    "parse_map",
    "OrbitPoint",
    "classify_orbit",
    "Preperiodic",
    "Wandering",
    "Unknown",
    "reduce_point",
    "congruent",
    "bad_primes",
    "factor",
    "build_diff_ledger",
    "build_sequence_ledger",
    "primitive_factors",
    "FamilyTag",
    "in_T",
    "in_E",
    "in_F1",
    "in_F2",
    "in_F3",
    "in_B",
    "kisaka_map",
    "RunConfig",
    "SUITES",
    "SuiteResult",
    "run_suite",
    "DynlabError",
]
