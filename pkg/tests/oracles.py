"""
Brute-force reference implementations by trial division.

Independent of the sieve tables; only usable for small arguments.
"""

from math import isqrt
from typing import List, Set

import numpy as np


def factor(n: int) -> List[int]:
    """Distinct prime factors of n (empty for n = 1)."""
    primes = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            primes.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        primes.append(n)
    return primes


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, isqrt(n) + 1))


def primes_upto(x: int) -> List[int]:
    return [n for n in range(2, x + 1) if is_prime(n)]


def totient(n: int) -> int:
    result = n
    for p in factor(n):
        result = result // p * (p - 1)
    return result


def totients_by_gcd(limit: int) -> List[int]:
    """phi(n) = #{1 <= a <= n : gcd(a, n) = 1} for 0 <= n <= limit (phi(0) = 0)."""
    a = np.arange(1, limit + 1)
    return [0] + [int(np.count_nonzero(np.gcd(a[:n], n) == 1)) for n in range(1, limit + 1)]


def largest_factor(n: int) -> int:
    primes = factor(n)
    return primes[-1] if primes else 1


def is_smooth(n: int, y: int) -> bool:
    return largest_factor(n) <= y


def psi(x: int, y: int) -> int:
    return sum(1 for n in range(1, x + 1) if is_smooth(n, y))


def pi_shifted(x: int, y: int) -> int:
    return sum(1 for p in primes_upto(x) if is_smooth(p - 1, y))


def phi_k(x: int, y: int, k: int) -> int:
    count = 0
    for n in range(1, x + 1):
        value = n
        for _ in range(k):
            value = totient(value)
        if is_smooth(value, y):
            count += 1
    return count


def psi_in(x: int, members: Set[int]) -> int:
    return sum(1 for n in range(1, x + 1) if set(factor(n)) <= members)


def pk_tower(x: int, y: int, k: int) -> List[Set[int]]:
    """P_0 = primes <= y; P_{j+1} = primes p <= x with every q | p - 1 in P_j."""
    primes = primes_upto(x)
    tower = [{p for p in primes if p <= y}]
    for _ in range(k):
        previous = tower[-1]
        tower.append({p for p in primes if set(factor(p - 1)) <= previous})
    return tower
