"""
Prime sets and the prime-set towers P_0 <= P_1 <= ... <= P_k.

A PrimeSet is a boolean membership mask over [0, limit] together with the
universe of all primes <= limit, so complements (primes not in P) are
available to the correction-factor and reciprocal-sum computations.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List
import logging

import numpy as np

from ..core.exceptions import DomainError, RangeError
from ..sieve.tables import SpfTable, iter_prime_factors
from ..utils.csvio import read_table, write_rows
from ..utils.validation import validate_index, validate_nonnegative_int

logger = logging.getLogger(__name__)

PSET_HEADER = ('p',)


@dataclass(frozen=True, eq=False)
class PrimeSet:
    """
    Membership structure over the primes <= limit.

    Attributes:
        limit: Inclusive bound x of the universe.
        mask: mask[p] is True exactly for members p.
        universe: All primes <= limit, increasing.
    """
    limit: int
    mask: np.ndarray
    universe: np.ndarray

    # Constructors

    @classmethod
    def from_mask(cls, mask: np.ndarray, universe: np.ndarray) -> 'PrimeSet':
        mask = np.array(mask, dtype=bool, copy=True)
        mask.setflags(write=False)
        return cls(limit=mask.size - 1, mask=mask, universe=universe)

    @classmethod
    def from_primes(cls, members: Iterable[int], t: SpfTable, limit: int = None) -> 'PrimeSet':
        """
        Build a set from explicit primes.

        Raises:
            DomainError: If a member is not prime or exceeds limit.
        """
        limit = t.limit if limit is None else validate_index('limit', limit, t.limit)
        universe = t.primes[:t.prime_count(limit)]
        mask = np.zeros(limit + 1, dtype=bool)

        for p in members:
            p = int(p)
            if p < 2 or p > limit or int(t.spf[p]) != p:
                raise DomainError(f"{p} is not a prime <= {limit}")
            mask[p] = True

        return cls.from_mask(mask, universe)

    @classmethod
    def upto(cls, y: int, t: SpfTable, limit: int = None) -> 'PrimeSet':
        """The set of primes <= y inside the universe of primes <= limit."""
        limit = t.limit if limit is None else validate_index('limit', limit, t.limit)
        universe = t.primes[:t.prime_count(limit)]
        mask = np.zeros(limit + 1, dtype=bool)
        mask[universe[universe <= min(y, limit)]] = True
        return cls.from_mask(mask, universe)

    @classmethod
    def all_primes(cls, t: SpfTable, limit: int = None) -> 'PrimeSet':
        limit = t.limit if limit is None else limit
        return cls.upto(limit, t, limit)

    # Queries

    @property
    def members(self) -> np.ndarray:
        """Members in increasing order."""
        return self.universe[self.mask[self.universe]]

    @property
    def excluded(self) -> np.ndarray:
        """Primes <= limit that are not members, increasing."""
        return self.universe[~self.mask[self.universe]]

    def count_upto(self, z) -> np.ndarray:
        """Number of members <= z (vectorized over z)."""
        return np.searchsorted(self.members, z, side='right')

    def contains_all_upto(self, y: int) -> bool:
        """True when every prime <= y is a member."""
        small = self.universe[self.universe <= min(y, self.limit)]
        return bool(self.mask[small].all())

    def issubset(self, other: 'PrimeSet') -> bool:
        members = self.members
        if members.size and members[-1] > other.limit:
            return False
        return bool(other.mask[members].all())

    def same_members(self, other: 'PrimeSet') -> bool:
        return np.array_equal(self.members, other.members)

    def __contains__(self, p: int) -> bool:
        return 0 <= p <= self.limit and bool(self.mask[p])

    def __len__(self) -> int:
        return int(self.mask[self.universe].sum())

    def __repr__(self) -> str:
        return f"PrimeSet(limit={self.limit}, size={len(self)})"

    # File I/O

    def to_csv(self, path: str) -> None:
        """Write members as CSV with header `p`."""
        write_rows(PSET_HEADER, ([int(p)] for p in self.members), path=path)

    @classmethod
    def from_csv(cls, path: str, t: SpfTable, limit: int = None) -> 'PrimeSet':
        """
        Read a prime-set file (header `p`, one prime per row).

        Raises:
            DomainError: On a bad header, an unparsable row, or a member
                         that is not a prime <= limit.
        """
        rows = read_table(path, PSET_HEADER, (int,))
        return cls.from_primes((p for (p,) in rows), t, limit)


def build_pk_tower(x: int, y: int, k: int, t: SpfTable) -> List[PrimeSet]:
    """
    Build the tower P_0, ..., P_k.

    P_0 is the set of primes <= y and P_{j+1} is the set of primes p <= x
    all of whose prime factors q | p - 1 lie in P_j. The factorizations of
    p - 1 are computed once and reused on every level; once a level
    repeats the tower has saturated and the remaining levels share it.

    Args:
        x: Universe bound, y <= x <= t.limit.
        y: Smoothness bound of P_0.
        k: Top level (>= 0).
        t: SPF table.

    Returns:
        List of k + 1 PrimeSets over the primes <= x.

    Raises:
        RangeError: If x exceeds the table or y exceeds x.
    """
    x = validate_index('x', x, t.limit)
    y = validate_index('y', y, x)
    k = validate_nonnegative_int('k', k)

    universe = t.primes[:t.prime_count(x)]

    # flat (position, prime factor) pairs of p - 1 for every p in the universe
    positions: List[np.ndarray] = []
    factors: List[np.ndarray] = []
    for active, q in iter_prime_factors(universe - 1, t.spf):
        positions.append(active)
        factors.append(q)
    pos = np.concatenate(positions) if positions else np.zeros(0, dtype=np.int64)
    fac = np.concatenate(factors) if factors else np.zeros(0, dtype=np.int64)

    mask = np.zeros(x + 1, dtype=bool)
    mask[universe[universe <= y]] = True
    tower = [PrimeSet.from_mask(mask, universe)]

    for level in range(1, k + 1):
        previous = tower[-1].mask
        failing = pos[~previous[fac]]

        mask = np.zeros(x + 1, dtype=bool)
        mask[universe] = True
        mask[universe[failing]] = False

        if np.array_equal(mask, previous):
            logger.debug(f"Tower saturated at level {level - 1} (x={x}, y={y})")
            tower.extend([tower[-1]] * (k + 1 - level))
            break

        tower.append(PrimeSet.from_mask(mask, universe))

    logger.debug(f"Tower x={x} y={y}: sizes {[len(P) for P in tower]}")
    return tower


def tower_sizes(tower: List[PrimeSet]) -> List[int]:
    """|P_j| for each level; |P_{j+1}| equals pi(x, P_j)."""
    return [len(P) for P in tower]


def require_limit(P: PrimeSet, x: int) -> None:
    """Raise RangeError unless P covers all primes <= x."""
    if P.limit < x:
        raise RangeError('x', x, P.limit, details={'reason': 'prime set too small'})
