"""
Sieve module - integer-arithmetic tables consumed by every counting operation.
"""

from .tables import (
    SpfTable,
    TotientTable,
    build_spf,
    build_totient,
    iter_chunks,
    iter_prime_factors,
    table_dtype,
)
from .factor import (
    factorize,
    largest_prime_factor,
    is_prime,
    mobius,
    phi_iterate,
)

__all__ = [
    "SpfTable",
    "TotientTable",
    "build_spf",
    "build_totient",
    "iter_chunks",
    "iter_prime_factors",
    "table_dtype",
    "factorize",
    "largest_prime_factor",
    "is_prime",
    "mobius",
    "phi_iterate",
]
