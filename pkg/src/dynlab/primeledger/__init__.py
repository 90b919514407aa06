"""Budgeted factoring and prime ledgers for orbits."""

from .factor import Factorization, factor, is_prime, multiplicative_order, primes_up_to, trial_divide
from .ledger import (
    Cell,
    DiffLedger,
    PersistenceReport,
    PrimitiveReport,
    SequenceLedger,
    build_diff_ledger,
    build_numerator_ledger,
    build_sequence_ledger,
    density_count,
    doubly_primitive_factors,
    fermat_order_oracle,
    observed_primes,
    power_persistence,
    primitive_factors,
    primitive_report,
    sequence_primitive,
    super_primitive_factors,
)

__all__ = [
    "Factorization",
    "factor",
    "is_prime",
    "primes_up_to",
    "trial_divide",
    "multiplicative_order",
    "Cell",
    "DiffLedger",
    "SequenceLedger",
    "PrimitiveReport",
    "PersistenceReport",
    "build_diff_ledger",
    "build_sequence_ledger",
    "build_numerator_ledger",
    "primitive_factors",
    "doubly_primitive_factors",
    "primitive_report",
    "sequence_primitive",
    "super_primitive_factors",
    "power_persistence",
    "density_count",
    "observed_primes",
    "fermat_order_oracle",
]
