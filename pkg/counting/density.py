"""
Densities built from prime sets: the correction factor for shifted primes,
the chi function fed to the integral-equation solver, and the averaged
discrepancy of primes congruent to 1 modulo d.
"""

import logging
import math

import numpy as np

from .primeset import PrimeSet
from ..core.exceptions import DomainError
from ..numerics.grid import GridFunction
from ..sieve.tables import SpfTable, build_totient
from ..utils.validation import validate_index, validate_open_unit, validate_positive

logger = logging.getLogger(__name__)

# relative slack when flooring real powers such as y^u to integers
_FLOOR_SLACK = 1e-12


def _floor_power(base: float, exponent: float) -> int:
    return int(math.floor(base ** exponent * (1.0 + _FLOOR_SLACK)))


def correction_factor(P: PrimeSet) -> float:
    """
    Product of (1 - 1/(p - 1)^2) over primes p <= P.limit not in P.

    Factors are multiplied in increasing order of p. The p = 2 factor is 0.

    Example:
        >>> correction_factor(PrimeSet.all_primes(build_spf(100)))
        1.0
    """
    excluded = P.excluded
    if excluded.size and excluded[0] == 2:
        return 0.0

    shifted = (excluded - 1).astype(np.float64)
    factors = 1.0 - 1.0 / (shifted * shifted)
    return float(math.prod(factors.tolist()))


def missing_reciprocal_sum(P: PrimeSet) -> float:
    """Sum of 1/p over primes p <= P.limit not in P."""
    excluded = P.excluded
    return math.fsum((1.0 / excluded.astype(np.float64)).tolist())


def chi_from_prime_set(P: PrimeSet, y: int, U: float, h: float) -> GridFunction:
    """
    Empirical chi(u) = pi(y^u, P) / pi(y^u) sampled at u = 0, h, ..., U.

    chi is 1 on [0, 1]; beyond that the count of members up to
    floor(y^u) is divided by the count of all primes up to the same bound.

    Args:
        P: Prime set containing every prime <= y.
        y: Base (>= 2).
        U: Horizon with y^U <= P.limit.
        h: Grid step.

    Raises:
        DomainError: If a precondition fails.
    """
    validate_positive('h', h)
    if int(y) != y or y < 2:
        raise DomainError(f"y must be an integer >= 2, got {y}")
    if U < 1:
        raise DomainError(f"U must be at least 1, got {U}")
    if not P.contains_all_upto(y):
        raise DomainError(f"Prime set must contain every prime <= {y}")
    if _floor_power(y, U) > P.limit:
        raise DomainError(f"y^U = {y}^{U} exceeds prime set limit {P.limit}")

    n = int(math.floor(U / h + 1e-9))
    u = np.arange(n + 1) * h
    values = np.ones(n + 1)

    tail = u > 1.0 + 1e-12
    bounds = np.array([_floor_power(y, v) for v in u[tail]], dtype=np.int64)
    members = P.count_upto(bounds)
    totals = np.searchsorted(P.universe, bounds, side='right')
    values[tail] = members / totals

    return GridFunction(step=h, values=values, label=f"chi(P, y={y})")


def eh_modulus_bound(x: int, epsilon: float) -> int:
    """Largest modulus D = floor(x^(1 - epsilon)), at least 1."""
    return max(1, _floor_power(x, 1.0 - epsilon))


def eh_discrepancy(x: int, epsilon: float, t: SpfTable) -> float:
    """
    Averaged discrepancy of primes congruent to 1 modulo d.

    Returns (1/pi(x)) * sum over d <= x^(1-epsilon) of
    |pi(x; d, 1) - pi(x)/phi(d)|, with pi(x; d, 1) counted by a direct scan
    of the primes and terms added in increasing d. This is a descriptive
    statistic: no finite x certifies the o(pi(x)) behaviour.

    Raises:
        RangeError: If x is outside the table.
        DomainError: If epsilon is not in (0, 1).
    """
    x = validate_index('x', x, t.limit, minimum=2)
    epsilon = validate_open_unit('epsilon', epsilon)

    D = eh_modulus_bound(x, epsilon)
    phi = build_totient(D, spf=t, max_limit=max(D, t.limit)).phi

    is_prime = t.is_prime[:x + 1]
    pi_x = t.prime_count(x)

    total = 0.0
    for d in range(1, D + 1):
        in_class = int(np.count_nonzero(is_prime[1::d]))
        total += abs(in_class - pi_x / int(phi[d]))

    logger.debug(f"EH discrepancy x={x} eps={epsilon}: D={D}, sum={total:.6g}")
    return total / pi_x
