"""
Closed-form asymptotics: leading-order saddle point for compact chi,
the growth-function estimate of log sigma, nested logarithms, and the
second-order density of smooth numbers at finite x.

None of the o(1) terms are modelled; differences against the solver are
reported as model error.
"""

from dataclasses import dataclass, field
from typing import Callable, Sequence
import math

import numpy as np

from .grid import GridFunction
from .saddle import support_end
from ..core.exceptions import DomainError
from ..utils.validation import validate_nonnegative_int


def iterated_log(k: int, u: float) -> float:
    """
    log_k(u): k-fold natural logarithm; log_0(u) = u.

    Raises:
        DomainError: If an argument or any intermediate value is <= 0.

    Example:
        >>> round(iterated_log(2, math.e ** math.e), 12)
        1.0
    """
    k = validate_nonnegative_int('k', k)
    value = float(u)
    for level in range(k):
        if value <= 0:
            raise DomainError(f"log_{level + 1}({u}) undefined: argument {value} <= 0")
        value = math.log(value)
        if value <= 0:
            raise DomainError(f"log_{level + 1}({u}) = {value} is not positive")
    return value


@dataclass(frozen=True)
class HSpec:
    """
    Growth function h with chi(v) decaying like (1/h(v))^v.

    Attributes:
        name: Identifier.
        func: Positive non-decreasing h.
        n: lim u h'(u) / h(u) (>= 0, finite).
        domain_min: Lower end of the domain.
        domain_max: Upper end of the domain (tabulated h only).
    """
    name: str
    func: Callable[[float], float] = field(repr=False)
    n: float
    domain_min: float = 0.0
    domain_max: float = math.inf

    def __post_init__(self):
        if not (0 <= self.n < math.inf):
            raise DomainError(f"HSpec {self.name}: limit index n must be finite and >= 0")

    @property
    def zeta(self) -> float:
        """e/n when n > 0, else 1."""
        return math.e / self.n if self.n > 0 else 1.0

    def evaluate(self, v: float) -> float:
        """
        h(v).

        Raises:
            DomainError: If v is outside the domain or h(v) <= 0.
        """
        if not (self.domain_min <= v <= self.domain_max):
            raise DomainError(f"HSpec {self.name} undefined at {v:g}")
        value = float(self.func(v))
        if not value > 0:
            raise DomainError(f"HSpec {self.name}: h({v:g}) = {value:g} is not positive")
        return value

    @classmethod
    def u_log_u(cls) -> 'HSpec':
        """h(v) = v log v, n = 1."""
        return cls('u_log_u', lambda v: v * math.log(v), 1.0, domain_min=1.0)

    @classmethod
    def dickman(cls) -> 'HSpec':
        """h(v) = v log v / e, the growth of Dickman's rho; n = 1."""
        return cls('dickman', lambda v: v * math.log(v) / math.e, 1.0, domain_min=1.0)

    @classmethod
    def iterated(cls, k: int) -> 'HSpec':
        """h(v) = log_k(v) log_{k+1}(v) for k >= 1, n = 0."""
        if int(k) != k or k < 1:
            raise DomainError(f"iterated HSpec needs k >= 1, got {k}")
        k = int(k)
        return cls(f'iterated_{k}', lambda v: iterated_log(k, v) * iterated_log(k + 1, v), 0.0)

    @classmethod
    def tabulated(cls, points: Sequence[float], values: Sequence[float], n: float,
                  name: str = 'tabulated') -> 'HSpec':
        """
        Piecewise-linear h through (points, values).

        Raises:
            DomainError: If the table is not increasing in v, not
                         non-decreasing in h, or not positive.
        """
        v = np.asarray(points, dtype=np.float64)
        h = np.asarray(values, dtype=np.float64)
        if v.ndim != 1 or v.shape != h.shape or v.size < 2:
            raise DomainError("Tabulated h needs matching point and value arrays of length >= 2")
        if np.any(np.diff(v) <= 0):
            raise DomainError("Tabulated h points must be strictly increasing")
        if np.any(np.diff(h) < 0) or np.any(h <= 0):
            raise DomainError("Tabulated h must be positive and non-decreasing")

        return cls(name, lambda x: float(np.interp(x, v, h)), float(n),
                   domain_min=float(v[0]), domain_max=float(v[-1]))


def hspec_for_level(j: int) -> HSpec:
    """
    Growth function of sigma_j, the chi that produces sigma_{j+1}:
    Dickman's h for j = 0, the iterated-log family otherwise.
    """
    j = validate_nonnegative_int('j', j)
    return HSpec.dickman() if j == 0 else HSpec.iterated(j)


def prop3_xi(T: float, u: float) -> float:
    """
    Leading-order saddle point log(u)/T for chi supported on [0, T].

    Raises:
        DomainError: Unless T > 1 and u > 1.

    Example:
        >>> prop3_xi(2.0, math.e ** 2)
        1.0
    """
    if not (T > 1 and u > 1):
        raise DomainError(f"prop3_xi needs T > 1 and u > 1, got T={T}, u={u}")
    return math.log(u) / T


def prop3_for_chi(chi: GridFunction, u: float) -> float:
    """prop3_xi with T read off a compact chi grid; non-compact chi is rejected."""
    return prop3_xi(support_end(chi), u)


def prop4_sigma(h: HSpec, u: float) -> float:
    """
    Log-scale estimate -u log h(zeta log u), zeta = e/n (n > 0) or 1 (n = 0).

    Raises:
        DomainError: If h is not an HSpec or undefined at zeta log u.
    """
    if not isinstance(h, HSpec):
        raise DomainError(f"prop4_sigma needs an HSpec, got {type(h).__name__}")
    if not u > 1:
        raise DomainError(f"prop4_sigma needs u > 1, got {u}")
    return -u * math.log(h.evaluate(h.zeta * math.log(u)))


def predicted_log_sigma(k: int, u: float) -> float:
    """
    Log-scale prediction for sigma_k(u).

    k = 0 uses rho(u) ~ (e / (u log u))^u; k >= 1 applies prop4_sigma to the
    growth function of sigma_{k-1}.
    """
    k = validate_nonnegative_int('k', k)
    if k == 0:
        if not u > 1:
            raise DomainError(f"rho asymptotic needs u > 1, got {u}")
        return -u * math.log(u * math.log(u) / math.e)
    return prop4_sigma(hspec_for_level(k - 1), u)


def second_order_density(rho: GridFunction, u: float, x: float) -> float:
    """
    rho(u) + (1 - gamma) rho(u - 1) / log x, the density of y-smooth
    integers up to x = y^u including its first finite-x correction.
    """
    if u < 1:
        raise DomainError(f"u must be at least 1, got {u}")
    if not x > 1:
        raise DomainError(f"x must exceed 1, got {x}")
    return rho.value_at(u) + (1.0 - np.euler_gamma) * rho.value_at(u - 1.0) / math.log(x)
