"""
Solver pipelines: rho, sigma and xi grids.
"""

from typing import List, Optional, Sequence

from .base import Pipeline, PipelineResult
from ..core.exceptions import DomainError
from ..numerics.grid import GRID_HEADER, GridFunction, indicator_chi
from ..numerics.saddle import XI_HEADER, SaddleSettings, solve_xi
from ..numerics.volterra import dickman_rho, iterate_sigma, quadrature_residual, solve_sigma

# residual constants above this are reported as suspicious
RESIDUAL_LIMIT = 10.0


def saddle_settings(config) -> SaddleSettings:
    """SaddleSettings from the toolkit's saddle config section."""
    s = config.saddle
    return SaddleSettings(
        rtol=s.rtol,
        xtol=s.xtol,
        initial_bracket=s.initial_bracket,
        max_doublings=s.max_doublings,
        max_bisections=s.max_bisections,
        tail_ratio=s.tail_ratio,
        tail_steps=s.tail_steps,
    )


class RhoPipeline(Pipeline):
    """Dickman's rho on [0, u]."""

    name = 'rho'

    def validate(self, u: float = None, **kwargs) -> Optional[str]:
        if u is None:
            return "u required"
        if u < 0:
            return f"u must be non-negative, got {u}"
        return None

    def _run(self, u: float, step: float = None) -> PipelineResult:
        h = step or self.config.solver.step
        rho = dickman_rho(max(u, 1.0), h, self.config.solver.log_threshold)
        value = rho.value_at(u)

        return PipelineResult.table(
            GRID_HEADER, rho.rows(),
            message=f"rho({u:g}) = {value:.12g}",
            metadata={'value': value, 'log_value': rho.log_at(u), 'step': h}
        )


class SigmaPipeline(Pipeline):
    """
    sigma grid: sigma_k from the iterated family, or sigma for a chi file.

    The residual constant of the last solve is reported in metadata.
    """

    name = 'sigma'

    def validate(self, k: int = 0, umax: float = None, **kwargs) -> Optional[str]:
        if k is not None and k < 0:
            return f"k must be non-negative, got {k}"
        if umax is not None and umax < 1:
            return f"umax must be at least 1, got {umax}"
        return None

    def _run(
        self,
        k: int = 0,
        umax: float = None,
        step: float = None,
        chi_path: str = None,
        compact: bool = False,
        jump: float = None
    ) -> PipelineResult:
        solver = self.config.solver
        h = step or solver.step
        U = umax or solver.umax

        if chi_path:
            chi = GridFunction.from_csv(chi_path, compact=compact, jump_at=jump)
            sigma = solve_sigma(chi, U, h, on_mismatch=solver.on_step_mismatch,
                                log_threshold=solver.log_threshold)
            residual = quadrature_residual(sigma, chi)
        else:
            sigmas = iterate_sigma(k, U, h, solver.log_threshold)
            sigma = sigmas[-1]
            chi = sigmas[-2] if k >= 1 else indicator_chi(1.0, U, h)
            residual = quadrature_residual(sigma, chi)

        if residual > RESIDUAL_LIMIT:
            self._logger.warning(f"Residual constant {residual:.3g} above {RESIDUAL_LIMIT:g}")

        return PipelineResult.table(
            GRID_HEADER, sigma.rows(),
            message=f"{sigma.label} on [0, {sigma.umax:g}]",
            metadata={'residual_constant': residual, 'step': h, 'label': sigma.label}
        )


class XiPipeline(Pipeline):
    """Saddle points for a list of u, for a chi file or an indicator of [0, T]."""

    name = 'xi'

    def validate(self, u: Sequence[float] = None, chi_path: str = None,
                 indicator: float = None, **kwargs) -> Optional[str]:
        if not u:
            return "at least one u required"
        if (chi_path is None) == (indicator is None):
            return "exactly one of chi file or indicator T required"
        return None

    def _run(
        self,
        u: Sequence[float],
        chi_path: str = None,
        indicator: float = None,
        step: float = None,
        compact: bool = False
    ) -> PipelineResult:
        h = step or self.config.solver.step

        if chi_path:
            chi = GridFunction.from_csv(chi_path, compact=compact)
        else:
            if indicator <= 1:
                raise DomainError(f"indicator support end must exceed 1, got {indicator}")
            chi = indicator_chi(indicator, indicator, h)

        settings = saddle_settings(self.config)
        rows: List[tuple] = [solve_xi(chi, value, settings).to_row() for value in u]

        return PipelineResult.table(XI_HEADER, rows, message=f"{len(rows)} saddle points")
