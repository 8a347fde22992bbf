"""
Exact smooth counts: Psi(x, y), pi(x, y), Psi(x, P), pi(x, P) and Phi_k(x, y).

Conventions: n = 1 is y-smooth for every y >= 1, and p = 2 is counted in
every shifted-prime count since p - 1 = 1 has no prime factor.
"""

from dataclasses import dataclass
from typing import Optional, Tuple
import logging
import math

import numpy as np

from .primeset import PrimeSet, require_limit
from ..sieve.tables import SpfTable, TotientTable, iter_chunks, iter_prime_factors
from ..utils.validation import validate_index, validate_nonnegative_int

logger = logging.getLogger(__name__)

COUNT_HEADER: Tuple[str, ...] = ('x', 'y', 'k', 'count', 'ratio')


@dataclass(frozen=True)
class CountRecord:
    """
    One exact count.

    Attributes:
        x: Upper bound.
        y: Smoothness bound, or None for set-based counts.
        k: Iteration level (0 for Psi and pi).
        count: Exact count.
        ratio: count / x, or count / pi(x) for shifted-prime counts.
        quantity: Short name of the counted quantity.
    """
    x: int
    y: Optional[int]
    k: int
    count: int
    ratio: float
    quantity: str = ''

    def to_row(self) -> tuple:
        return (self.x, 'set' if self.y is None else self.y, self.k, self.count, self.ratio)


def _ratio(count: int, total: int) -> float:
    return count / total if total else 0.0


def _all_factors_in(values: np.ndarray, mask: np.ndarray, spf: np.ndarray) -> np.ndarray:
    """Boolean array: every prime factor of values[i] is a member of mask."""
    ok = np.ones(values.size, dtype=bool)
    for active, q in iter_prime_factors(values, spf):
        ok[active[~mask[q]]] = False
    return ok


def psi_smooth(x: int, y: int, t: SpfTable) -> CountRecord:
    """
    Psi(x, y): number of n <= x with every prime factor <= y.

    Raises:
        RangeError: If x is outside [1, t.limit] or y < 1.

    Example:
        >>> psi_smooth(10, 2, build_spf(100)).count
        4
    """
    x = validate_index('x', x, t.limit)
    y = validate_index('y', y, math.inf)

    count = int(np.count_nonzero(t.lpf[1:x + 1] <= min(y, x)))
    return CountRecord(x, y, 0, count, _ratio(count, x), 'psi')


def pi_smooth_shifted(x: int, y: int, t: SpfTable) -> CountRecord:
    """
    pi(x, y): number of primes p <= x with p - 1 y-smooth.

    The ratio is taken over pi(x).
    """
    x = validate_index('x', x, t.limit)
    y = validate_index('y', y, math.inf)

    primes = t.primes[:t.prime_count(x)]
    count = int(np.count_nonzero(t.lpf[primes - 1] <= min(y, x)))
    return CountRecord(x, y, 0, count, _ratio(count, primes.size), 'pi')


def psi_set(x: int, P: PrimeSet, t: SpfTable) -> CountRecord:
    """
    Psi(x, P): number of n <= x whose prime factors all lie in P.

    Raises:
        RangeError: If x exceeds the table or P does not cover x.
    """
    x = validate_index('x', x, t.limit)
    require_limit(P, x)

    count = 0
    for lo, hi in iter_chunks(1, x + 1):
        ok = _all_factors_in(np.arange(lo, hi, dtype=np.int64), P.mask, t.spf)
        count += int(np.count_nonzero(ok))
    return CountRecord(x, None, 0, count, _ratio(count, x), 'psi_set')


def pi_set(x: int, P: PrimeSet, t: SpfTable) -> CountRecord:
    """pi(x, P): number of primes p <= x whose p - 1 factors inside P."""
    x = validate_index('x', x, t.limit)
    require_limit(P, x)

    primes = t.primes[:t.prime_count(x)]
    ok = _all_factors_in(primes - 1, P.mask, t.spf)
    count = int(np.count_nonzero(ok))
    return CountRecord(x, None, 0, count, _ratio(count, primes.size), 'pi_set')


def phi_k_smooth_count(x: int, y: int, k: int, t: SpfTable, tt: TotientTable) -> CountRecord:
    """
    Phi_k(x, y): number of n <= x with phi_k(n) y-smooth.

    The iterated totient is applied by table lookup one chunk of the
    range at a time; values never grow, so the tables covering x cover
    every intermediate value.

    Args:
        x: Upper bound, x <= min(t.limit, tt.limit).
        y: Smoothness bound (>= 1).
        k: Iteration count (>= 0); k = 0 gives Psi(x, y).
        t: SPF table.
        tt: Totient table.
    """
    x = validate_index('x', x, min(t.limit, tt.limit))
    y = validate_index('y', y, math.inf)
    k = validate_nonnegative_int('k', k)

    bound = min(y, x)
    count = 0
    for lo, hi in iter_chunks(1, x + 1):
        values = np.arange(lo, hi, dtype=np.int64)
        for _ in range(k):
            values = tt.phi[values]
        count += int(np.count_nonzero(t.lpf[values] <= bound))

    logger.debug(f"Phi_{k}({x}, {y}) = {count}")
    return CountRecord(x, y, k, count, _ratio(count, x), 'phi_k')


def prop1_ratio(psi_tower: int, phi_count: int, x: int, y: int, k: int) -> float:
    """
    Normalized gap (Psi(x, P_k) - Phi_k(x, y)) * y / (x * (log x)^(2k)).

    Returns NaN for x = 1 with k >= 1, where log x vanishes.
    """
    scale = x * math.log(x) ** (2 * k)
    if scale == 0:
        return math.nan
    return (psi_tower - phi_count) * y / scale
