"""
Sieve tables: smallest prime factor and Euler totient.

Both tables are numpy arrays indexed by n (int32 up to 2^31 - 1, int64
beyond), built once and frozen (read-only arrays) so they can be shared
across concurrent readers. Derived tables are filled in fixed-size chunks.
The totient is derived from the SPF table, which is the single source of
truth for every factorization in the package.
"""

from dataclasses import dataclass
from functools import cached_property
from math import isqrt
from typing import Iterator, Optional, Tuple
import logging

import numpy as np

from ..core.exceptions import SizeError
from ..utils.validation import validate_limit
from ..utils.timing import Stopwatch

logger = logging.getLogger(__name__)

DEFAULT_MAX_LIMIT = 10**8
CHUNK_SIZE = 1 << 20


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SpfTable:
    """
    Smallest-prime-factor table.

    Attributes:
        limit: Inclusive upper bound x.
        spf: spf[n] is the smallest prime factor of n for 2 <= n <= limit
             (spf[0] = 0, spf[1] = 1 by convention).
        lpf: lpf[n] is the largest prime factor of n (lpf[1] = 1).
        primes: All primes <= limit, increasing.
    """
    limit: int
    spf: np.ndarray
    lpf: np.ndarray
    primes: np.ndarray

    @cached_property
    def is_prime(self) -> np.ndarray:
        """Boolean mask of length limit + 1."""
        mask = np.zeros(self.limit + 1, dtype=bool)
        mask[self.primes] = True
        return _freeze(mask)

    def prime_count(self, z: int) -> int:
        """pi(z) for z <= limit."""
        return int(np.searchsorted(self.primes, z, side='right'))

    def __repr__(self) -> str:
        return f"SpfTable(limit={self.limit}, primes={self.primes.size})"


@dataclass(frozen=True)
class TotientTable:
    """
    Euler totient table.

    Attributes:
        limit: Inclusive upper bound.
        phi: phi[n] = Euler phi of n for 1 <= n <= limit (phi[0] = 0).
    """
    limit: int
    phi: np.ndarray

    def __repr__(self) -> str:
        return f"TotientTable(limit={self.limit})"


def table_dtype(limit: int) -> type:
    """Narrowest signed dtype holding every value up to limit."""
    return np.int32 if limit <= np.iinfo(np.int32).max else np.int64


def iter_chunks(start: int, stop: int, size: int = CHUNK_SIZE) -> Iterator[Tuple[int, int]]:
    """Consecutive half-open ranges [lo, hi) covering [start, stop)."""
    for lo in range(start, stop, size):
        yield lo, min(lo + size, stop)


def iter_prime_factors(values: np.ndarray, spf: np.ndarray) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """
    Peel prime factors off an array of integers, smallest first.

    Each round yields (positions, primes): for every position whose
    remaining cofactor exceeds 1, the smallest prime still dividing it.
    A prime of multiplicity e is yielded in e consecutive rounds, and for
    each position the primes arrive in non-decreasing order.

    Args:
        values: Integers in [1, len(spf) - 1].
        spf: Smallest-prime-factor array covering the values.

    Yields:
        Tuple of index array and prime array of equal length.
    """
    cofactor = np.array(values, dtype=np.int64, copy=True)
    active = np.flatnonzero(cofactor > 1)

    while active.size:
        primes = spf[cofactor[active]]
        yield active, primes
        cofactor[active] //= primes
        active = active[cofactor[active] > 1]


def build_spf(
    limit: int,
    max_limit: int = DEFAULT_MAX_LIMIT,
    allow_override: bool = False
) -> SpfTable:
    """
    Build the smallest-prime-factor table up to limit.

    Eratosthenes-style: each prime p <= sqrt(limit) marks the still
    unmarked multiples from p^2 on; unmarked entries are primes. The
    largest-prime-factor table is then peeled chunk by chunk, so the
    working set beyond the two tables stays at a few chunk-sized arrays.

    Args:
        limit: Inclusive upper bound, 2 <= limit <= max_limit.
        max_limit: Configured build cap.
        allow_override: Permit limits above the cap.

    Returns:
        Frozen SpfTable.

    Raises:
        SizeError: If limit is out of range.
    """
    limit = validate_limit(limit, max_limit, minimum=2, allow_override=allow_override)
    dtype = table_dtype(limit)

    with Stopwatch() as watch:
        spf = np.zeros(limit + 1, dtype=dtype)

        for p in range(2, isqrt(limit) + 1):
            if spf[p] == 0:
                block = spf[p * p::p]
                block[block == 0] = p

        unmarked = np.flatnonzero(spf == 0)
        spf[unmarked] = unmarked
        spf[1] = 1

        primes = unmarked[unmarked >= 2].astype(dtype)
        del unmarked

        lpf = np.zeros(limit + 1, dtype=dtype)
        lpf[1] = 1
        for lo, hi in iter_chunks(2, limit + 1):
            part = lpf[lo:hi]
            for active, p in iter_prime_factors(np.arange(lo, hi, dtype=np.int64), spf):
                part[active] = p

    logger.info(f"Built SPF table to {limit} ({primes.size} primes, {watch.elapsed:.2f}s)")

    return SpfTable(limit=limit, spf=_freeze(spf), lpf=_freeze(lpf), primes=_freeze(primes))


def build_totient(
    limit: int,
    spf: Optional[SpfTable] = None,
    max_limit: int = DEFAULT_MAX_LIMIT,
    allow_override: bool = False
) -> TotientTable:
    """
    Build phi(n) for all n <= limit from the SPF table.

    phi is accumulated multiplicatively while peeling prime factors, one
    chunk at a time: a new prime p contributes p - 1, a repeated one
    contributes p.

    Args:
        limit: Inclusive upper bound (>= 1).
        spf: SPF table with spf.limit >= limit; built if omitted.
        max_limit: Configured build cap.
        allow_override: Permit limits above the cap.

    Returns:
        Frozen TotientTable.

    Raises:
        SizeError: If limit is out of range or above the given SPF table.
    """
    limit = validate_limit(limit, max_limit, minimum=1, allow_override=allow_override)

    if spf is None:
        spf = build_spf(max(limit, 2), max_limit=max_limit, allow_override=allow_override)
    elif spf.limit < limit:
        raise SizeError(limit, spf.limit, details={'reason': 'SPF table too small'})

    with Stopwatch() as watch:
        phi = np.ones(limit + 1, dtype=table_dtype(limit))
        phi[0] = 0

        for lo, hi in iter_chunks(2, limit + 1):
            acc = np.ones(hi - lo, dtype=np.int64)
            last = np.zeros(hi - lo, dtype=np.int64)
            for active, p in iter_prime_factors(np.arange(lo, hi, dtype=np.int64), spf.spf):
                repeated = last[active] == p
                acc[active] *= np.where(repeated, p, p - 1)
                last[active] = p
            phi[lo:hi] = acc

    logger.info(f"Built totient table to {limit} ({watch.elapsed:.2f}s)")

    return TotientTable(limit=limit, phi=_freeze(phi))
