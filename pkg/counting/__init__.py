"""
Counting module - exact smooth counts, prime-set towers, densities and identities.
"""

from .primeset import PSET_HEADER, PrimeSet, build_pk_tower, tower_sizes, require_limit
from .smooth import (
    COUNT_HEADER,
    CountRecord,
    psi_smooth,
    pi_smooth_shifted,
    psi_set,
    pi_set,
    phi_k_smooth_count,
    prop1_ratio,
)
from .density import (
    correction_factor,
    missing_reciprocal_sum,
    chi_from_prime_set,
    eh_discrepancy,
    eh_modulus_bound,
)
from .identities import (
    SuiteReport,
    ChainSums,
    lemma32_sides,
    lemma33_sides,
    chain_sum_R,
    lemma42_bound,
    lemma32_suite,
    lemma33_suite,
    lemma42_suite,
)

__all__ = [
    "PSET_HEADER",
    "PrimeSet",
    "build_pk_tower",
    "tower_sizes",
    "require_limit",
    "COUNT_HEADER",
    "CountRecord",
    "psi_smooth",
    "pi_smooth_shifted",
    "psi_set",
    "pi_set",
    "phi_k_smooth_count",
    "prop1_ratio",
    "correction_factor",
    "missing_reciprocal_sum",
    "chi_from_prime_set",
    "eh_discrepancy",
    "eh_modulus_bound",
    "SuiteReport",
    "ChainSums",
    "lemma32_sides",
    "lemma33_sides",
    "chain_sum_R",
    "lemma42_bound",
    "lemma32_suite",
    "lemma33_suite",
    "lemma42_suite",
]
