"""
Grid solver for the delay integral equation

    u sigma(u) = integral_0^u sigma(u - t) chi(t) dt,   sigma = 1 on [0, 1].

Trapezoid rule on a uniform grid with u = 1 on the grid. The t = 0 endpoint
carries sigma(u) itself (chi(0) = 1), so each step is a linear equation in
sigma_i, solved in closed form:

    sigma_i (u_i - h/2) = h [ sum_{j=1}^{i-1} sigma_{i-j} chi_j + chi(u_i-) / 2 ]

where chi(u_i-) is the left limit, which differs from the stored sample
only at a recorded jump.

With chi the indicator of [0, 1] this is the Dickman recurrence

    rho_i (u_i - h/2) = h [ rho_{i-m} / 2 + sum_{j=i-m+1}^{i-1} rho_j ],  m = 1/h,

whose window sum is evaluated directly on every step. Once values fall
below the log threshold the same recurrence runs in log space, so the
returned grids keep finite log values where linear values underflow.
"""

from typing import Callable, List, Tuple
import logging
import math

import numpy as np

from .grid import GridFunction, indicator_chi
from ..core.exceptions import DomainError
from ..utils.timing import Stopwatch, timed
from ..utils.validation import validate_nonnegative_int, validate_step

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1.0 / 256
DEFAULT_UMAX = 20.0
LOG_THRESHOLD = 1e-300


def _logsumexp(terms: np.ndarray) -> float:
    top = terms.max() if terms.size else -np.inf
    if not np.isfinite(top):
        return -math.inf
    return float(top + np.log(np.exp(terms - top).sum()))


def _grid_size(U: float, h: float) -> int:
    n = int(math.floor(U / h + 1e-9))
    if abs(n * h - U) > 1e-9 * max(1.0, U):
        logger.debug(f"Horizon {U} is not a grid point of step {h}; using {n * h}")
    return n


def _solve(
    chi: np.ndarray,
    chi_logs: np.ndarray,
    chi_end: np.ndarray,
    n: int,
    m: int,
    h: float,
    log_threshold: float
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Run the recurrence on indices 0..n.

    Args:
        chi: chi_0..chi_n (zero-extended as needed).
        chi_logs: log chi_0..log chi_n.
        chi_end: chi at the upper integration end (left limits at a jump).
        n: Number of intervals.
        m: Intervals per unit length.
        h: Step.
        log_threshold: Switch to log space once a value drops below this.

    Returns:
        (values, log_values).
    """
    values = np.ones(n + 1)
    logs = np.zeros(n + 1)

    nonzero = np.flatnonzero(chi)
    support = int(nonzero[-1]) if nonzero.size else 0
    log_mode = False
    half = math.log(0.5)
    end_logs = np.array(chi_logs, copy=True)
    differs = chi_end != chi
    end_logs[differs] = np.log(chi_end[differs])
    log_h = math.log(h)

    for i in range(m + 1, n + 1):
        s = min(i - 1, support)
        denominator = i * h - 0.5 * h

        if not log_mode and values[i - 1] < log_threshold:
            log_mode = True
            logger.debug(f"Switched to log space at u={i * h:g}")

        if not log_mode:
            window = values[i - s:i][::-1]
            acc = float(np.dot(window, chi[1:s + 1])) + 0.5 * chi_end[i]
            values[i] = h * acc / denominator
            logs[i] = math.log(values[i]) if values[i] > 0 else -math.inf
        else:
            terms = logs[i - s:i][::-1] + chi_logs[1:s + 1]
            endpoint = half + end_logs[i]
            logs[i] = log_h + _logsumexp(np.append(terms, endpoint)) - math.log(denominator)
            values[i] = math.exp(logs[i])

    return values, logs


@timed(budget=1.0)
def dickman_rho(U: float, h: float = DEFAULT_STEP, log_threshold: float = LOG_THRESHOLD) -> GridFunction:
    """
    Dickman's function on [0, U].

    Args:
        U: Horizon (>= 1).
        h: Step with 0 < h <= 1/16 and 1/h an integer.
        log_threshold: Log-space switch.

    Returns:
        GridFunction with rho = 1 on [0, 1], positive and non-increasing.

    Raises:
        DomainError: If h or U is out of range.

    Example:
        >>> dickman_rho(2.0).value_at(2.0)   # 1 - log 2
        0.30685...
    """
    m = validate_step(h, max_step=1.0 / 16)
    if not (U >= 1):
        raise DomainError(f"U must be at least 1, got {U}")

    n = _grid_size(U, h)
    chi = indicator_chi(1.0, n * h, h)

    with Stopwatch() as watch:
        values, logs = _solve(chi.values, chi.log_values, chi.left_limits(n), n, m, h, log_threshold)

    logger.debug(f"rho: N={n}, h={h:g} ({watch.elapsed:.3f}s)")
    return GridFunction(step=h, values=values, log_values=logs, label='rho')


def solve_sigma(
    chi: GridFunction,
    U: float,
    h: float = DEFAULT_STEP,
    on_mismatch: str = 'resample',
    log_threshold: float = LOG_THRESHOLD
) -> GridFunction:
    """
    Solve u sigma(u) = integral_0^u sigma(u - t) chi(t) dt on [0, U].

    Args:
        chi: chi grid; chi = 1 on [0, 1), 0 <= chi <= 1, defined on [0, U]
             or compact (zero-extended).
        U: Horizon (>= 1).
        h: Step with 1/h an integer.
        on_mismatch: 'resample' linearly resamples chi onto step h;
                     'reject' raises when chi.step != h.
        log_threshold: Log-space switch.

    Returns:
        sigma grid with sigma = 1 on [0, 1].

    Raises:
        DomainError: On invalid parameters, a short non-compact chi, or a
                     rejected step mismatch.
    """
    m = validate_step(h)
    if not (U >= 1):
        raise DomainError(f"U must be at least 1, got {U}")
    if on_mismatch not in ('resample', 'reject'):
        raise DomainError(f"on_mismatch must be 'resample' or 'reject', got {on_mismatch!r}")

    if abs(chi.step - h) > 1e-12 * h:
        if on_mismatch == 'reject':
            raise DomainError(f"chi step {chi.step:g} differs from solver step {h:g}")
        logger.info(f"Resampling chi from step {chi.step:g} to {h:g}")
        chi = chi.resampled(h, min(U, chi.umax) if not chi.compact else chi.umax)

    chi.check_density(m)

    n = _grid_size(U, h)
    with Stopwatch() as watch:
        values, logs = _solve(chi.padded(n), chi.padded_logs(n), chi.left_limits(n),
                              n, m, h, log_threshold)

    logger.debug(f"sigma[{chi.label}]: N={n}, h={h:g} ({watch.elapsed:.3f}s)")
    return GridFunction(step=h, values=values, log_values=logs, label=f"sigma[{chi.label}]")


@timed(budget=10.0)
def iterate_sigma(k: int, U: float = DEFAULT_UMAX, h: float = DEFAULT_STEP,
                  log_threshold: float = LOG_THRESHOLD) -> List[GridFunction]:
    """
    sigma_0, ..., sigma_k with sigma_0 = rho and sigma_{j+1} solved with chi = sigma_j.

    Example:
        >>> [g.label for g in iterate_sigma(1, U=3.0)]
        ['sigma_0', 'sigma_1']
    """
    k = validate_nonnegative_int('k', k)
    rho = dickman_rho(U, h, log_threshold)
    sigmas = [GridFunction(step=h, values=rho.values, log_values=rho.log_values, label='sigma_0')]

    for j in range(1, k + 1):
        nxt = solve_sigma(sigmas[-1], U, h, on_mismatch='reject', log_threshold=log_threshold)
        sigmas.append(GridFunction(step=h, values=nxt.values, log_values=nxt.log_values,
                                   label=f"sigma_{j}"))

    return sigmas


def quadrature_residual(sigma: GridFunction, chi: GridFunction) -> float:
    """
    Residual constant C = max over grid u > 1 of |u sigma(u) - Q(u)| / (h^2 u),
    where Q(u) is the full trapezoid quadrature of integral_0^u sigma(u - t) chi(t) dt
    on sigma's grid.
    """
    h = sigma.step
    if abs(chi.step - h) > 1e-12 * h:
        chi = chi.resampled(h, chi.umax)

    n = sigma.size
    m = int(round(1.0 / h))
    s = sigma.values
    c = chi.padded(n)
    c_end = chi.left_limits(n)

    conv = np.convolve(s, c)[:n + 1]
    quadrature = h * (conv - 0.5 * s * c[0] - s[0] * c + 0.5 * s[0] * c_end)

    u = sigma.points
    tail = slice(m + 1, n + 1)
    residual = np.abs(u[tail] * s[tail] - quadrature[tail])
    if residual.size == 0:
        return 0.0
    return float((residual / (h * h * u[tail])).max())


def richardson_ratio(solver: Callable[[float], GridFunction], u: float, h: float) -> float:
    """
    (f_h - f_{h/2}) / (f_{h/2} - f_{h/4}) at u, where f_s = solver(s).value_at(u).

    A second-order scheme gives a ratio near 4.
    """
    a, b, c = (solver(step).value_at(u) for step in (h, h / 2, h / 4))
    if b == c:
        return math.inf
    return (a - b) / (b - c)
