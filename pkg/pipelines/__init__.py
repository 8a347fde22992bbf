"""
Pipelines module - one pipeline per command-line subcommand.

Provides pipeline classes for:
- Solver grids (rho, sigma, xi)
- Exact counts and prime-set towers
- Shifted-prime comparison and discrepancy statistics
- Identity suites
- Empirical-versus-predicted comparison sweeps
"""

from typing import Sequence, TYPE_CHECKING

from .base import Pipeline, PipelineResult, CompositePipeline
from .solver import RhoPipeline, SigmaPipeline, XiPipeline
from .counting import CountPipeline, PsetPipeline, Conjecture1Pipeline, EhPipeline
from .identities import (
    SuitePipeline,
    Lemma32Pipeline,
    Lemma33Pipeline,
    Lemma42Pipeline,
    IdentitiesPipeline,
)
from .compare import ExperimentConfig, ComparisonRow, ComparePipeline

if TYPE_CHECKING:
    from .. import SmoothPhiToolkit

__all__ = [
    "Pipeline",
    "PipelineResult",
    "CompositePipeline",
    "RhoPipeline",
    "SigmaPipeline",
    "XiPipeline",
    "CountPipeline",
    "PsetPipeline",
    "Conjecture1Pipeline",
    "EhPipeline",
    "SuitePipeline",
    "Lemma32Pipeline",
    "Lemma33Pipeline",
    "Lemma42Pipeline",
    "IdentitiesPipeline",
    "ExperimentConfig",
    "ComparisonRow",
    "ComparePipeline",
    "PipelineRegistry",
]


class PipelineRegistry:
    """
    Registry for available pipelines.

    Provides convenient access to all pipelines through
    the SmoothPhiToolkit.pipelines interface.
    """

    def __init__(self, toolkit: 'SmoothPhiToolkit'):
        """
        Initialize pipeline registry.

        Args:
            toolkit: Parent SmoothPhiToolkit instance.
        """
        self.toolkit = toolkit

        self._rho = RhoPipeline(toolkit)
        self._sigma = SigmaPipeline(toolkit)
        self._xi = XiPipeline(toolkit)
        self._count = CountPipeline(toolkit)
        self._pset = PsetPipeline(toolkit)
        self._compare = ComparePipeline(toolkit)
        self._conjecture1 = Conjecture1Pipeline(toolkit)
        self._eh = EhPipeline(toolkit)
        self._identities = IdentitiesPipeline(toolkit)

    # Solver pipelines

    def rho(self, u: float, step: float = None) -> PipelineResult:
        """
        Dickman's rho grid on [0, u].

        Returns:
            PipelineResult with the `u,value` grid; metadata['value'] is rho(u).
        """
        return self._rho.execute(u=u, step=step)

    def sigma(
        self,
        k: int = 0,
        umax: float = None,
        step: float = None,
        chi_path: str = None,
        compact: bool = False,
        jump: float = None
    ) -> PipelineResult:
        """
        sigma_k grid, or the sigma grid for a chi file.

        Args:
            jump: Grid point where the chi file samples a jump at its mean value.

        Returns:
            PipelineResult with the grid; metadata['residual_constant'].
        """
        return self._sigma.execute(k=k, umax=umax, step=step, chi_path=chi_path,
                                   compact=compact, jump=jump)

    def xi(
        self,
        u: Sequence[float],
        chi_path: str = None,
        indicator: float = None,
        step: float = None,
        compact: bool = False
    ) -> PipelineResult:
        """Saddle points for each u."""
        return self._xi.execute(u=list(u), chi_path=chi_path, indicator=indicator,
                                step=step, compact=compact)

    # Counting pipelines

    def count(self, x: int, y: int, k: int = 0) -> PipelineResult:
        """Phi_j(x, y) rows for j = 0..k."""
        return self._count.execute(x=x, y=y, k=k)

    def pset(self, x: int, y: int, k: int = 0) -> PipelineResult:
        """Members of P_k in prime-set file format."""
        return self._pset.execute(x=x, y=y, k=k)

    def conjecture1(self, x: int, y: int, pset_path: str = None) -> PipelineResult:
        """Shifted-prime against integer smooth ratios, with correction factor."""
        return self._conjecture1.execute(x=x, y=y, pset_path=pset_path)

    def eh(self, x: int, epsilon: float = None) -> PipelineResult:
        """Averaged discrepancy statistic."""
        return self._eh.execute(x=x, epsilon=epsilon)

    def identities(self) -> PipelineResult:
        """
        Run every identity suite.

        Returns:
            PipelineResult; exit_code 2 if any suite failed.
        """
        return self._identities.execute()

    # Comparison

    def compare(self, experiment: ExperimentConfig) -> PipelineResult:
        """Empirical-versus-predicted comparison rows."""
        return self._compare.execute(experiment=experiment)
