"""
Numerics module - grid functions, the delay integral equation solver,
saddle points and closed-form asymptotics.
"""

from .grid import GridFunction, indicator_chi
from .volterra import (
    DEFAULT_STEP,
    DEFAULT_UMAX,
    dickman_rho,
    solve_sigma,
    iterate_sigma,
    quadrature_residual,
    richardson_ratio,
)
from .saddle import (
    XI_HEADER,
    SaddleSettings,
    XiResult,
    solve_xi,
    sigma_estimate,
    dickman_xi,
    lemma51_check,
    support_end,
    vanishes_beyond_one,
)
from .asymptotics import (
    HSpec,
    hspec_for_level,
    iterated_log,
    prop3_xi,
    prop3_for_chi,
    prop4_sigma,
    predicted_log_sigma,
    second_order_density,
)

__all__ = [
    "GridFunction",
    "indicator_chi",
    "DEFAULT_STEP",
    "DEFAULT_UMAX",
    "dickman_rho",
    "solve_sigma",
    "iterate_sigma",
    "quadrature_residual",
    "richardson_ratio",
    "XI_HEADER",
    "SaddleSettings",
    "XiResult",
    "solve_xi",
    "sigma_estimate",
    "dickman_xi",
    "lemma51_check",
    "support_end",
    "vanishes_beyond_one",
    "HSpec",
    "hspec_for_level",
    "iterated_log",
    "prop3_xi",
    "prop3_for_chi",
    "prop4_sigma",
    "predicted_log_sigma",
    "second_order_density",
]
