"""
Exactly testable identities and bounds.

- Divisor-sum identity for squarefree m: a truncated sum of mu(r)/r over
  d | r | m rewritten as a sum over n built from the primes of d.
  Evaluated in exact rational arithmetic.
- Log-sum identity: sum of log(n)/n over multiples n of k built from the
  primes of k, against its closed form. Evaluated in floating point with an
  explicit truncation bound.
- Chain-sum bound: R(r, k, x), the sum of 1/q_k over prime chains
  r | q_1 - 1, q_1 | q_2 - 1, ..., q_k <= x, against (log x + 1)^k / r.

Each family has a suite returning a SuiteReport; the harness turns a failed
report into an IdentityFailure.
"""

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple
import logging
import math

import numpy as np

from ..core.exceptions import BudgetExceededError, DomainError
from ..sieve.tables import SpfTable
from ..utils.timing import Stopwatch
from ..utils.validation import validate_index, validate_squarefree

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 5_000_000
DEFAULT_LOG_SUM_TRUNCATION = 10**40


@dataclass
class SuiteReport:
    """
    Outcome of one identity suite.

    Attributes:
        name: Suite name.
        cases: Number of cases evaluated.
        worst_deviation: Largest |LHS - RHS| (or largest bound ratio).
        passed: Whether every case met the suite tolerance.
        worst_case: Parameters of the worst case.
        duration: Run time in seconds.
    """
    name: str
    cases: int
    worst_deviation: float
    passed: bool
    worst_case: Dict = field(default_factory=dict)
    duration: float = 0.0

    def to_row(self) -> tuple:
        return (self.name, self.cases, self.worst_deviation, 'pass' if self.passed else 'fail')


def _prime_divisors(n: int) -> List[int]:
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


def _products_upto(primes: Sequence[int], start: int, bound: int) -> List[int]:
    """All start * (products of powers of primes) that are <= bound, sorted."""
    if start > bound:
        return []
    values = [start]
    for p in primes:
        extended = []
        for v in values:
            while v <= bound:
                extended.append(v)
                v *= p
        values = extended
    return sorted(values)


@lru_cache(maxsize=512)
def _divisor_table(m: int) -> Tuple[Tuple[int, ...], Tuple[Fraction, ...], Tuple[int, ...]]:
    """
    Sorted divisors of squarefree m, prefix sums of mu(r)/r over them, and mu.

    prefix[i] is the sum over the first i divisors.
    """
    primes = _prime_divisors(m)
    divisors = [1]
    signs = [1]
    for p in primes:
        divisors += [r * p for r in divisors]
        signs += [-s for s in signs]

    order = sorted(range(len(divisors)), key=divisors.__getitem__)
    divisors = [divisors[i] for i in order]
    signs = [signs[i] for i in order]

    prefix = [Fraction(0)]
    for r, s in zip(divisors, signs):
        prefix.append(prefix[-1] + Fraction(s, r))

    return tuple(divisors), tuple(prefix), tuple(signs)


def lemma32_sides(m: int, d: int, x: int) -> Tuple[Fraction, Fraction]:
    """
    Both sides of the divisor-sum identity for squarefree m and d | m.

    LHS = sum over r <= x with d | r | m of mu(r)/r.
    RHS = mu(d) * sum over n >= 1 with d | n and every prime of n dividing d
          of (1/n) * sum over r <= x/n with r | m of mu(r)/r.

    Terms with n > x have an empty inner sum, so the outer sum stops at x.

    Returns:
        (LHS, RHS) as exact Fractions.

    Raises:
        DomainError: If m is not squarefree, d does not divide m, or x < 1.

    Example:
        >>> lemma32_sides(6, 2, 6)
        (Fraction(-1, 3), Fraction(-1, 3))
    """
    m = validate_squarefree(m)
    if int(d) != d or d < 1 or m % d:
        raise DomainError(f"d={d} must be a positive divisor of m={m}")
    if int(x) != x or x < 1:
        raise DomainError(f"x must be a positive integer, got {x}")
    d, x = int(d), int(x)

    divisors, prefix, signs = _divisor_table(m)

    lhs = Fraction(0)
    for r, s in zip(divisors, signs):
        if r > x:
            break
        if r % d == 0:
            lhs += Fraction(s, r)

    mu_d = -1 if len(_prime_divisors(d)) % 2 else 1
    rhs = Fraction(0)
    for n in _products_upto(_prime_divisors(d), d, x):
        rhs += prefix[bisect_right(divisors, x // n)] / n

    return lhs, mu_d * rhs


def lemma33_sides(k: int, truncation: int = DEFAULT_LOG_SUM_TRUNCATION) -> Tuple[float, float]:
    """
    Both sides of the log-sum identity for k.

    LHS = sum of log(n)/n over n <= truncation with k | n and every prime of
          n dividing k, summed exactly rounded (math.fsum).
    RHS = (1/phi(k)) * (sum over p | k of log(p)/(p - 1) + log(k)).

    The LHS terms are n = k * d with d built from the primes of k. The tail
    beyond the truncation decays like (log N)^w / N for w distinct primes,
    so the default bound leaves it far below double precision.

    Raises:
        DomainError: If k < 2 or the truncation is below k.
    """
    if int(k) != k or k < 2:
        raise DomainError(f"k must be an integer >= 2, got {k}")
    if truncation < k:
        raise DomainError(f"truncation {truncation} must be at least k={k}")
    k = int(k)

    primes = _prime_divisors(k)
    phi_k = k
    for p in primes:
        phi_k = phi_k // p * (p - 1)

    lhs = math.fsum(math.log(n) / n for n in _products_upto(primes, k, truncation))
    rhs = (math.fsum(math.log(p) / (p - 1) for p in primes) + math.log(k)) / phi_k

    return lhs, rhs


class ChainSums:
    """
    Memoized chain sums R(r, k, x) for a fixed x.

    S(c, j) is the sum over primes q <= x with q = 1 mod c of 1/q when
    j = 1, and of S(q, j - 1) otherwise; R(r, k, x) = S(r, k). Candidates
    q = 1 + c, 1 + 2c, ... are scanned against the prime mask, and every
    scanned candidate counts towards the node budget.

    Args:
        x: Upper bound of the chain (<= t.limit).
        t: SPF table.
        node_budget: Maximum number of scanned candidates.
    """

    def __init__(self, x: int, t: SpfTable, node_budget: int = DEFAULT_NODE_BUDGET):
        self.x = validate_index('x', x, t.limit)
        self.node_budget = node_budget
        self.nodes = 0
        self._is_prime = t.is_prime[:self.x + 1]
        self._memo: Dict[Tuple[int, int], float] = {}

    def _primes_one_mod(self, c: int) -> np.ndarray:
        scanned = self._is_prime[1 + c::c]
        self.nodes += scanned.size
        if self.nodes > self.node_budget:
            raise BudgetExceededError(self.node_budget, details={'x': self.x, 'modulus': c})
        return np.flatnonzero(scanned) * c + 1 + c

    def value(self, c: int, j: int) -> float:
        key = (c, j)
        cached = self._memo.get(key)
        if cached is not None:
            return cached

        total = 0.0
        for q in self._primes_one_mod(c).tolist():
            total += 1.0 / q if j == 1 else self.value(q, j - 1)

        self._memo[key] = total
        return total


def chain_sum_R(
    r: int,
    k: int,
    x: int,
    t: SpfTable,
    node_budget: int = DEFAULT_NODE_BUDGET,
    sums: ChainSums = None
) -> float:
    """
    R(r, k, x): sum of 1/q_k over prime chains r | q_1 - 1, q_i | q_{i+1} - 1,
    q_k <= x. Terms are added in increasing q at every level.

    Args:
        r: Chain root (>= 1).
        k: Chain length (>= 1).
        x: Upper bound.
        t: SPF table with t.limit >= x.
        node_budget: Enumeration guard.
        sums: Shared memo for repeated calls with the same x.

    Raises:
        DomainError: If r or k is not an integer >= 1.
        BudgetExceededError: If the enumeration exceeds node_budget.

    Example:
        >>> chain_sum_R(3, 1, 20, build_spf(100))   # 1/7 + 1/13 + 1/19
        0.2724...
    """
    for name, value in (('r', r), ('k', k)):
        if isinstance(value, bool) or int(value) != value or value < 1:
            raise DomainError(f"{name} must be an integer >= 1, got {value}")
    if sums is None or sums.x != x:
        sums = ChainSums(x, t, node_budget)
    if r > x:
        return 0.0
    return sums.value(int(r), int(k))


def lemma42_bound(r: int, k: int, x: int) -> float:
    """(log x + 1)^k / r."""
    return (math.log(x) + 1.0) ** k / r


# Suites

def squarefree_upto(limit: int) -> List[int]:
    out = []
    for m in range(1, limit + 1):
        if all(m % (q * q) for q in range(2, math.isqrt(m) + 1)):
            out.append(m)
    return out


def lemma32_suite(max_m: int = 210, max_x: int = 100) -> SuiteReport:
    """Exact equality for all squarefree m <= max_m, d | m, x <= max_x."""
    cases = 0
    worst = Fraction(0)
    worst_case: Dict = {}

    with Stopwatch() as watch:
        for m in squarefree_upto(max_m):
            for d in _divisor_table(m)[0]:
                for x in range(1, max_x + 1):
                    lhs, rhs = lemma32_sides(m, d, x)
                    deviation = abs(lhs - rhs)
                    cases += 1
                    if deviation > worst:
                        worst = deviation
                        worst_case = {'m': m, 'd': d, 'x': x}

    report = SuiteReport('lemma32', cases, float(worst), worst == 0, worst_case, watch.elapsed)
    logger.info(f"lemma32: {cases} cases, worst deviation {float(worst):.3e} ({watch.elapsed:.2f}s)")
    return report


def lemma33_suite(
    max_k: int = 100,
    truncation: int = DEFAULT_LOG_SUM_TRUNCATION,
    tolerance: float = 1e-9
) -> SuiteReport:
    """|LHS_truncated - RHS| <= tolerance for 2 <= k <= max_k."""
    worst = 0.0
    worst_case: Dict = {}

    with Stopwatch() as watch:
        for k in range(2, max_k + 1):
            lhs, rhs = lemma33_sides(k, truncation)
            deviation = abs(lhs - rhs)
            if deviation > worst:
                worst = deviation
                worst_case = {'k': k, 'lhs': lhs, 'rhs': rhs}

    cases = max(0, max_k - 1)
    report = SuiteReport('lemma33', cases, worst, worst <= tolerance, worst_case, watch.elapsed)
    logger.info(f"lemma33: {cases} cases, worst deviation {worst:.3e} ({watch.elapsed:.2f}s)")
    return report


def lemma42_suite(
    t: SpfTable,
    max_r: int = 50,
    max_k: int = 3,
    x_values: Iterable[int] = (10, 100, 1000, 10000),
    node_budget: int = DEFAULT_NODE_BUDGET
) -> SuiteReport:
    """
    R(r, k, x) / ((log x + 1)^k / r) <= 1 for 2 <= r <= max_r, 1 <= k <= max_k.

    The reported deviation is the largest ratio.
    """
    cases = 0
    worst = 0.0
    worst_case: Dict = {}

    with Stopwatch() as watch:
        for x in x_values:
            sums = ChainSums(x, t, node_budget)
            for k in range(1, max_k + 1):
                for r in range(2, max_r + 1):
                    ratio = chain_sum_R(r, k, x, t, sums=sums) / lemma42_bound(r, k, x)
                    cases += 1
                    if ratio > worst:
                        worst = ratio
                        worst_case = {'r': r, 'k': k, 'x': x}

    report = SuiteReport('lemma42', cases, worst, worst <= 1.0, worst_case, watch.elapsed)
    logger.info(f"lemma42: {cases} cases, worst ratio {worst:.4f} ({watch.elapsed:.2f}s)")
    return report
