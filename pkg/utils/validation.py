"""
Input validation utilities.

Validators normalize their argument and raise the matching toolkit
exception on failure, so callers can chain them at the top of an operation.
"""

from fractions import Fraction
from typing import Union
import math

from ..core.exceptions import DomainError, RangeError, SizeError


def validate_limit(limit: int, cap: int, minimum: int = 1, allow_override: bool = False) -> int:
    """
    Validate a sieve table limit.

    Args:
        limit: Requested inclusive upper bound.
        cap: Configured build cap.
        minimum: Smallest admissible limit.
        allow_override: Permit limits above cap.

    Returns:
        Limit as integer.

    Raises:
        SizeError: If limit is below minimum or above cap.

    Example:
        >>> validate_limit(100, cap=10**8)
        100
    """
    try:
        value = int(limit)
    except (ValueError, TypeError):
        raise SizeError(limit, cap)

    if value != limit or value < minimum:
        raise SizeError(limit, cap)

    if value > cap and not allow_override:
        raise SizeError(value, cap)

    return value


def validate_index(name: str, value: int, limit: int, minimum: int = 1) -> int:
    """
    Validate that an integer argument lies in [minimum, limit].

    Raises:
        RangeError: If value is outside the table range.
    """
    try:
        n = int(value)
    except (ValueError, TypeError):
        raise DomainError(f"{name} must be an integer, got: {value}")

    if n != value:
        raise DomainError(f"{name} must be an integer, got: {value}")

    if n < minimum or n > limit:
        raise RangeError(name, n, limit)

    return n


def validate_nonnegative_int(name: str, value: int) -> int:
    """Validate a non-negative integer such as an iteration count k."""
    if isinstance(value, bool) or int(value) != value or value < 0:
        raise DomainError(f"{name} must be a non-negative integer, got: {value}")
    return int(value)


def validate_step(h: float, max_step: float = 1.0) -> int:
    """
    Validate a solver grid step.

    The step must place u = 1 exactly on the grid, i.e. 1/h is an integer.

    Args:
        h: Grid step.
        max_step: Largest admissible step.

    Returns:
        Number of grid intervals per unit length (1/h).

    Raises:
        DomainError: If h is not positive, too large, or 1/h is not integral.
    """
    if not (h > 0) or h > max_step:
        raise DomainError(f"step must lie in (0, {max_step}], got: {h}")

    per_unit = 1.0 / h
    m = int(round(per_unit))
    if m < 1 or abs(per_unit - m) > 1e-9 * per_unit:
        raise DomainError(f"1/step must be an integer, got step: {h}")

    return m


def validate_open_unit(name: str, value: float) -> float:
    """Validate 0 < value < 1."""
    if not (0.0 < value < 1.0):
        raise DomainError(f"{name} must lie in (0, 1), got: {value}")
    return float(value)


def validate_positive(name: str, value: Union[int, float, Fraction]) -> Union[int, float, Fraction]:
    """Validate value > 0 (and finite for floats)."""
    if isinstance(value, float) and not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got: {value}")
    if not value > 0:
        raise DomainError(f"{name} must be positive, got: {value}")
    return value


def validate_squarefree(m: int) -> int:
    """
    Validate that m is a squarefree positive integer.

    Raises:
        DomainError: If m < 1 or some p^2 divides m.
    """
    if int(m) != m or m < 1:
        raise DomainError(f"m must be a positive integer, got: {m}")

    q = 2
    while q * q <= m:
        if m % (q * q) == 0:
            raise DomainError(f"m must be squarefree, {q * q} divides {m}")
        q += 1

    return int(m)
