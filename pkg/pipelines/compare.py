"""
Empirical-versus-predicted comparison of Phi_k(x, y)/x.

For each x the row holds the exact count Phi_k(x, y)/x, the tower count
Psi(x, P_k)/x that bounds it from above, the solver density sigma_k(u), the
growth-function prediction in log10, and the normalized tower gap. Rows are
computed concurrently and emitted in input order; a row whose x is outside
the sieve cap carries the error in its status column and the run continues.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional
import math

from .base import Pipeline, PipelineResult
from ..core.exceptions import DomainError, SizeError, SmoothPhiError
from ..counting.primeset import build_pk_tower
from ..counting.smooth import phi_k_smooth_count, prop1_ratio, psi_set
from ..numerics.asymptotics import predicted_log_sigma
from ..numerics.grid import GridFunction
from ..numerics.volterra import iterate_sigma
from ..utils.csvio import write_rows

COMPARE_HEADER = (
    'x', 'y', 'k', 'u', 'empirical', 'tower', 'sigma_k', 'sigma_k_log10',
    'prop4_log10', 'prop1_ratio', 'status',
)

_LN10 = math.log(10.0)


@dataclass
class ExperimentConfig:
    """
    Parameters of one comparison sweep.

    Attributes:
        x_list: Upper bounds, one row each.
        u: y = round(x^(1/u)) unless y is given.
        k: Iteration level.
        step: Solver step (None: config default).
        umax: Solver horizon (None: config default, extended to cover every u).
        out: CSV file the rows are written to (None: returned only).
        parallelism: Worker threads for row computation.
        y: Explicit smoothness bound overriding the u mapping.
    """
    x_list: List[int] = field(default_factory=list)
    u: float = 2.0
    k: int = 1
    step: Optional[float] = None
    umax: Optional[float] = None
    out: Optional[str] = None
    parallelism: int = 1
    y: Optional[int] = None

    def validate(self) -> List[str]:
        """Return list of validation errors (empty if valid)."""
        errors = []
        if not self.x_list:
            errors.append("x_list must not be empty")
        if any(int(x) != x or x < 2 for x in self.x_list):
            errors.append("every x must be an integer >= 2")
        if self.y is None and not self.u >= 1:
            errors.append(f"u must be at least 1, got {self.u}")
        if self.y is not None and self.y < 2:
            errors.append(f"y must be at least 2, got {self.y}")
        if self.k < 0:
            errors.append(f"k must be non-negative, got {self.k}")
        if self.parallelism < 1:
            errors.append(f"parallelism must be positive, got {self.parallelism}")
        return errors

    def smoothness(self, x: int) -> tuple:
        """(y, u) for x: the rounded y = x^(1/u), or the override with u = log x / log y."""
        if self.y is None:
            return max(1, int(round(x ** (1.0 / self.u)))), float(self.u)
        return int(self.y), math.log(x) / math.log(self.y)


@dataclass
class ComparisonRow:
    """One comparison row; numeric fields are None when the row failed."""
    x: int
    y: Optional[int]
    k: int
    u: float
    empirical: Optional[float] = None
    tower: Optional[float] = None
    sigma_k: Optional[float] = None
    sigma_k_log10: Optional[float] = None
    prop4_log10: Optional[float] = None
    prop1_ratio: Optional[float] = None
    status: str = 'ok'

    def to_row(self) -> tuple:
        return (self.x, self.y, self.k, self.u, self.empirical, self.tower, self.sigma_k,
                self.sigma_k_log10, self.prop4_log10, self.prop1_ratio, self.status)


class ComparePipeline(Pipeline):
    """Comparison sweep over ExperimentConfig.x_list."""

    name = 'compare'

    def validate(self, experiment: ExperimentConfig = None, **kwargs) -> Optional[str]:
        if experiment is None:
            return "experiment config required"
        errors = experiment.validate()
        return "; ".join(errors) if errors else None

    def _run(self, experiment: ExperimentConfig) -> PipelineResult:
        solver = self.config.solver
        sieve = self.config.sieve
        h = experiment.step or solver.step
        k = experiment.k

        in_cap = [x for x in experiment.x_list if x <= sieve.max_limit or sieve.allow_override]
        t, tt = self.tables(max(in_cap)) if in_cap else (None, None)

        u_values = [experiment.smoothness(x)[1] for x in experiment.x_list]
        finite_u = [u for u in u_values if math.isfinite(u)]
        horizon = max([experiment.umax or solver.umax] + [math.ceil(u) for u in finite_u])
        sigma = iterate_sigma(k, horizon, h, solver.log_threshold)[-1]

        def compute(x: int) -> ComparisonRow:
            y, u = experiment.smoothness(x)
            try:
                if t is None or x > t.limit:
                    raise SizeError(x, sieve.max_limit)
                return self._row(x, y, k, u, sigma, t, tt)
            except SmoothPhiError as e:
                self._logger.warning(f"compare x={x}: {e.message}")
                return ComparisonRow(x, y, k, u, status=e.message)

        with ThreadPoolExecutor(max_workers=experiment.parallelism) as pool:
            rows = list(pool.map(compute, experiment.x_list))

        failed = sum(1 for r in rows if r.status != 'ok')
        table = [r.to_row() for r in rows]
        metadata = {'horizon': horizon, 'step': h, 'failed_rows': failed}

        if experiment.out:
            try:
                write_rows(COMPARE_HEADER, table, path=experiment.out,
                           digits=self.config.harness.float_digits)
            except OSError as e:
                raise DomainError(f"Cannot write {experiment.out}: {e}")
            metadata['written'] = experiment.out

        return PipelineResult.table(
            COMPARE_HEADER, table,
            message=f"{len(rows)} rows ({failed} failed)",
            metadata=metadata
        )

    @staticmethod
    def _row(x: int, y: int, k: int, u: float, sigma: GridFunction, t, tt) -> ComparisonRow:
        if y > x:
            raise DomainError(f"y={y} exceeds x={x}")
        if not (math.isfinite(u) and u >= 0):
            raise DomainError(f"u={u} undefined for x={x}, y={y}")

        tower = build_pk_tower(x, y, k, t)
        psi_tower = psi_set(x, tower[-1], t).count
        phi_count = phi_k_smooth_count(x, y, k, t, tt).count

        try:
            prop4 = predicted_log_sigma(k, u) / _LN10
        except DomainError:
            prop4 = None

        return ComparisonRow(
            x=x, y=y, k=k, u=u,
            empirical=phi_count / x,
            tower=psi_tower / x,
            sigma_k=sigma.value_at(u),
            sigma_k_log10=sigma.log_at(u) / _LN10,
            prop4_log10=prop4,
            prop1_ratio=prop1_ratio(psi_tower, phi_count, x, y, k),
        )
