"""
Single-integer queries against the sieve tables.
"""

from typing import List, Tuple

from .tables import SpfTable, TotientTable
from ..utils.validation import validate_index, validate_nonnegative_int


def factorize(n: int, t: SpfTable) -> List[Tuple[int, int]]:
    """
    Factor n by repeated SPF lookup.

    Args:
        n: Integer with 1 <= n <= t.limit.
        t: SPF table.

    Returns:
        List of (prime, exponent) with strictly increasing primes;
        empty for n = 1.

    Raises:
        RangeError: If n is outside [1, t.limit].

    Example:
        >>> factorize(12, build_spf(100))
        [(2, 2), (3, 1)]
    """
    n = validate_index('n', n, t.limit)
    factors: List[Tuple[int, int]] = []

    while n > 1:
        p = int(t.spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        factors.append((p, e))

    return factors


def largest_prime_factor(n: int, t: SpfTable) -> int:
    """Largest prime dividing n; 1 for n = 1."""
    n = validate_index('n', n, t.limit)
    return int(t.lpf[n])


def is_prime(n: int, t: SpfTable) -> bool:
    """Primality by table lookup."""
    n = validate_index('n', n, t.limit)
    return n >= 2 and int(t.spf[n]) == n


def mobius(n: int, t: SpfTable) -> int:
    """Moebius function of n."""
    factors = factorize(n, t)
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def phi_iterate(n: int, k: int, t: TotientTable) -> int:
    """
    Iterated totient phi_k(n).

    phi_0(n) = n and phi_{j+1}(n) = phi(phi_j(n)). Intermediate values
    never exceed n, so a table covering n covers the whole chain.

    Args:
        n: Integer with 1 <= n <= t.limit.
        k: Number of iterations (>= 0).
        t: Totient table.

    Returns:
        phi_k(n).
    """
    n = validate_index('n', n, t.limit)
    k = validate_nonnegative_int('k', k)

    for _ in range(k):
        if n == 1:
            break
        n = int(t.phi[n])

    return n
