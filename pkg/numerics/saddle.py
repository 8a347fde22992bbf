"""
Saddle point xi(u) of a chi grid and the resulting estimate of log sigma(u).

xi(u) is the root of

    u = integral_1^inf chi(v) e^(xi v) dv,

evaluated with the trapezoid rule on chi's grid. The integral is strictly
increasing in xi, so the root is found by geometric bracket expansion from
[-B, B] followed by bisection. All sums run in log space.
"""

from dataclasses import dataclass
from typing import Tuple
import logging
import math

import numpy as np

from .grid import GridFunction
from ..core.exceptions import DomainError, NumericError
from ..utils.validation import validate_positive

logger = logging.getLogger(__name__)

XI_HEADER = ('u', 'xi', 'integral', 'residual', 'truncation_T')


@dataclass(frozen=True)
class SaddleSettings:
    """Tolerances for the root search and the tail truncation."""
    rtol: float = 1e-9
    xtol: float = 1e-12
    initial_bracket: float = 1.0
    max_doublings: int = 60
    max_bisections: int = 200
    tail_ratio: float = 1e-16
    tail_steps: int = 10


DEFAULT_SETTINGS = SaddleSettings()


@dataclass(frozen=True)
class XiResult:
    """
    Saddle point with the residual of its defining equation.

    Attributes:
        u: Argument.
        xi: Root.
        integral: integral_1^T chi(v) e^(xi v) dv at the root.
        residual: |integral - u|.
        truncation_T: Upper integration limit used.
    """
    u: float
    xi: float
    integral: float
    residual: float
    truncation_T: float

    def to_row(self) -> tuple:
        return (self.u, self.xi, self.integral, self.residual, self.truncation_T)


def _logsumexp(terms: np.ndarray) -> float:
    top = terms.max() if terms.size else -np.inf
    if not np.isfinite(top):
        return -math.inf
    return float(top + np.log(np.exp(terms - top).sum()))


def support_end(chi: GridFunction) -> float:
    """
    Right end T of the support of a compact chi: the last grid point with a
    nonzero value.

    Raises:
        DomainError: If chi is not flagged compact.
    """
    if not chi.compact:
        raise DomainError(f"{chi.label or 'chi'} is not compactly supported")
    nonzero = np.flatnonzero(chi.values)
    return float(nonzero[-1] * chi.step) if nonzero.size else 0.0


def vanishes_beyond_one(chi: GridFunction) -> bool:
    """True when chi is zero at every grid point v > 1."""
    start = int(round(1.0 / chi.step)) + 1
    return not np.any(chi.values[start:] != 0.0)


class _ShiftedIntegral:
    """
    Trapezoid weights for integral_1^end chi(v) f(v) dv in log form.

    A compact chi gets one extra zero sample so the trapezoid closes at
    the end of its support.
    """

    def __init__(self, chi: GridFunction, settings: SaddleSettings):
        h = chi.step
        start = int(round(1.0 / h))
        values = chi.values[start:]
        logs = chi.log_values[start:]
        if chi.compact:
            values = np.append(values, 0.0)
            logs = np.append(logs, -np.inf)

        self.h = h
        self.compact = chi.compact
        self.v = (start + np.arange(values.size)) * h
        weights = np.ones(values.size)
        weights[0] = weights[-1] = 0.5
        self.log_weighted = np.log(weights) + np.where(values > 0, logs, -np.inf)
        self.settings = settings
        self.truncation_converged = True

    def _cutoff(self, terms: np.ndarray) -> int:
        """Index past the last sample needed by the tail rule."""
        self.truncation_converged = True
        if self.compact:
            return terms.size
        with np.errstate(invalid='ignore'):
            running = np.logaddexp.accumulate(terms)
            small = terms - running < math.log(self.settings.tail_ratio)
        run = 0
        for i, flag in enumerate(small.tolist()):
            run = run + 1 if flag else 0
            if run >= self.settings.tail_steps:
                return i + 1
        self.truncation_converged = False
        return terms.size

    def log_value(self, xi: float, extra: np.ndarray = None) -> Tuple[float, float]:
        """(log integral, truncation point) at xi, with an optional extra log factor."""
        terms = self.log_weighted + xi * self.v
        if extra is not None:
            terms = terms + extra
        end = self._cutoff(terms)
        return math.log(self.h) + _logsumexp(terms[:end]), float(self.v[end - 1])


def _find_root(func, target: float, settings: SaddleSettings, label: str) -> float:
    """
    Root of the increasing function func(x) = target.

    The bracket [-B, B] is doubled outwards until it straddles the target;
    bisection then runs until the bracket is within xtol relative width.

    Raises:
        NumericError: If the bracket cannot be found or bisection stalls.
    """
    lo, hi = -settings.initial_bracket, settings.initial_bracket
    doublings = 0
    while func(hi) < target:
        lo, hi = hi, 2.0 * hi
        doublings += 1
        if doublings > settings.max_doublings:
            raise NumericError(f"{label}: no upper bracket after {doublings} doublings",
                               details={'target': target, 'hi': hi})
    while func(lo) > target:
        lo, hi = 2.0 * lo, lo
        doublings += 1
        if doublings > settings.max_doublings:
            raise NumericError(f"{label}: no lower bracket after {doublings} doublings",
                               details={'target': target, 'lo': lo})

    for bisections in range(settings.max_bisections):
        mid = 0.5 * (lo + hi)
        if hi - lo <= settings.xtol * max(1.0, abs(mid)):
            logger.debug(f"{label}: bracket [{lo:.6g}, {hi:.6g}] after "
                         f"{doublings} doublings, {bisections} bisections")
            return mid
        if func(mid) < target:
            lo = mid
        else:
            hi = mid

    raise NumericError(f"{label}: bisection did not converge",
                       details={'lo': lo, 'hi': hi})


def solve_xi(chi: GridFunction, u: float, settings: SaddleSettings = DEFAULT_SETTINGS) -> XiResult:
    """
    Solve u = integral_1^inf chi(v) e^(xi v) dv.

    For compact chi the integral ends at the support end T. Otherwise it is
    cut once the integrand stays below tail_ratio of the running total for
    tail_steps consecutive samples; if that never happens the grid end is
    used and a warning is logged.

    Args:
        chi: chi grid (chi = 1 on [0, 1)).
        u: Target (> 0).
        settings: Tolerances.

    Returns:
        XiResult with residual <= rtol * u.

    Raises:
        DomainError: If u <= 0 or chi vanishes beyond 1.
        NumericError: If the root search fails or the residual is too large.

    Example:
        >>> abs(solve_xi(indicator_chi(2.0, 4.0, 1/256), 1.0).xi) < 1e-9
        True
    """
    validate_positive('u', u)
    if vanishes_beyond_one(chi):
        raise DomainError(f"{chi.label or 'chi'} vanishes beyond 1; the integral is identically 0")

    integral = _ShiftedIntegral(chi, settings)
    target = math.log(u)

    xi = _find_root(lambda s: integral.log_value(s)[0], target, settings, f"xi(u={u:g})")
    log_value, truncation = integral.log_value(xi)

    if not integral.truncation_converged:
        logger.warning(f"xi(u={u:g}): tail of {chi.label or 'chi'} not negligible "
                       f"before grid end {chi.umax:g}")

    value = math.exp(log_value)
    residual = abs(value - u)
    if residual > settings.rtol * u:
        raise NumericError(f"xi(u={u:g}): residual {residual:.3e} above tolerance",
                           details={'xi': xi, 'residual': residual})

    if chi.compact:
        truncation = support_end(chi)

    return XiResult(u=float(u), xi=xi, integral=value, residual=residual, truncation_T=truncation)


def dickman_xi(u: float, settings: SaddleSettings = DEFAULT_SETTINGS) -> float:
    """
    Classical saddle point of Dickman's function: the root of e^xi = 1 + u xi
    (xi = 0 at u = 1, negative for u < 1).
    """
    validate_positive('u', u)

    def log_ratio(s: float) -> float:
        # log((e^s - 1) / s), increasing in s
        return 0.0 if s == 0.0 else math.log(math.expm1(s) / s)

    return _find_root(log_ratio, math.log(u), settings, f"dickman_xi(u={u:g})")


def _exp_integral_series(xi: float) -> float:
    """integral_0^xi (e^s - 1)/s ds = sum_{j>=1} xi^j / (j * j!)."""
    total = 0.0
    term = 1.0
    j = 1
    while True:
        term *= xi / j
        piece = term / j
        total += piece
        if abs(piece) <= 1e-17 * abs(total) or j > 500:
            return total
        j += 1


def sigma_estimate(chi: GridFunction, u: float, settings: SaddleSettings = DEFAULT_SETTINGS) -> float:
    """
    Log-scale saddle-point estimate of sigma(u):

        -xi(u) u + integral_1^inf chi(v) e^(xi(u) v) / v dv.

    The o(1) u correction is not modelled. For u <= 1 the estimate is 0
    (sigma = 1). When chi vanishes beyond 1 (the Dickman case) the shifted
    integral is identically zero and the classical form
    -xi u + integral_0^xi (e^s - 1)/s ds with e^xi = 1 + u xi is used.
    """
    if u <= 1:
        return 0.0

    if vanishes_beyond_one(chi):
        xi = dickman_xi(u, settings)
        return -xi * u + _exp_integral_series(xi)

    result = solve_xi(chi, u, settings)
    integral = _ShiftedIntegral(chi, settings)
    log_tail, _ = integral.log_value(result.xi, extra=-np.log(integral.v))
    return -result.xi * u + math.exp(log_tail)


def lemma51_check(chi: GridFunction, u: float, epsilon: float,
                  settings: SaddleSettings = DEFAULT_SETTINGS) -> Tuple[float, float]:
    """
    Logs of both sides of the growth bound

        integral_1^inf chi(v) e^((xi + eps) v) dv >= u^(1 + eps / (2 xi)),

    stated for u >= C^2 with C = integral_1^inf chi(v) dv.

    Returns:
        (log LHS, log RHS).

    Raises:
        DomainError: If u < C^2 or xi(u) <= 0.
    """
    validate_positive('epsilon', epsilon)
    integral = _ShiftedIntegral(chi, settings)
    C = math.exp(integral.log_value(0.0)[0])
    if u < C * C:
        raise DomainError(f"u={u} is below C^2={C * C:.6g}")

    xi = solve_xi(chi, u, settings).xi
    if xi <= 0:
        raise DomainError(f"xi(u={u})={xi} is not positive")

    lhs, _ = integral.log_value(xi + epsilon)
    rhs = (1.0 + epsilon / (2.0 * xi)) * math.log(u)
    return lhs, rhs
