"""
Counting pipelines: exact counts, prime-set towers, the shifted-prime
comparison with its correction factor, and the discrepancy statistic.
"""

from typing import Optional

from .base import Pipeline, PipelineResult
from ..counting.density import (
    correction_factor,
    eh_discrepancy,
    eh_modulus_bound,
    missing_reciprocal_sum,
)
from ..counting.primeset import PSET_HEADER, PrimeSet, build_pk_tower, tower_sizes
from ..counting.smooth import (
    COUNT_HEADER,
    phi_k_smooth_count,
    pi_set,
    pi_smooth_shifted,
    psi_set,
    psi_smooth,
)

CONJECTURE1_HEADER = (
    'x', 'y', 'pi_ratio', 'psi_ratio', 'ratio',
    'pset_pi_ratio', 'pset_psi_ratio', 'correction', 'corrected_ratio',
    'missing_reciprocal_sum',
)
EH_HEADER = ('x', 'epsilon', 'D', 'discrepancy')


def _quotient(a: float, b: float) -> Optional[float]:
    return a / b if b else None


class CountPipeline(Pipeline):
    """Phi_j(x, y) for j = 0..k (j = 0 is Psi(x, y))."""

    name = 'count'

    def validate(self, x: int = None, y: int = None, k: int = 0, **kwargs) -> Optional[str]:
        if x is None or y is None:
            return "x and y required"
        if k < 0:
            return f"k must be non-negative, got {k}"
        return None

    def _run(self, x: int, y: int, k: int = 0) -> PipelineResult:
        t, tt = self.tables(x)
        records = [phi_k_smooth_count(x, y, j, t, tt) for j in range(k + 1)]

        return PipelineResult.table(
            COUNT_HEADER, [r.to_row() for r in records],
            message=f"Phi_{k}({x}, {y}) = {records[-1].count}",
            metadata={'pi': pi_smooth_shifted(x, y, t).count}
        )


class PsetPipeline(Pipeline):
    """Tower P_0..P_k; emits the members of P_k in prime-set file format."""

    name = 'pset'

    def validate(self, x: int = None, y: int = None, k: int = 0, **kwargs) -> Optional[str]:
        if x is None or y is None:
            return "x and y required"
        if y > x:
            return f"y={y} must not exceed x={x}"
        return None

    def _run(self, x: int, y: int, k: int = 0) -> PipelineResult:
        t, _ = self.tables(x)
        tower = build_pk_tower(x, y, k, t)
        sizes = tower_sizes(tower)

        return PipelineResult.table(
            PSET_HEADER, [(int(p),) for p in tower[-1].members],
            message=f"|P_j| = {sizes}",
            metadata={'sizes': sizes}
        )


class Conjecture1Pipeline(Pipeline):
    """
    pi(x, y)/pi(x) against Psi(x, y)/x, and the prime-set variant with its
    correction factor. Without a prime-set file P is the primes <= y.
    """

    name = 'conjecture1'

    def validate(self, x: int = None, y: int = None, **kwargs) -> Optional[str]:
        if x is None or y is None:
            return "x and y required"
        return None

    def _run(self, x: int, y: int, pset_path: str = None) -> PipelineResult:
        t, _ = self.tables(x)

        pi_rec = pi_smooth_shifted(x, y, t)
        psi_rec = psi_smooth(x, y, t)

        if pset_path:
            P = PrimeSet.from_csv(pset_path, t, limit=x)
        else:
            P = PrimeSet.upto(y, t, limit=x)

        pi_p = pi_set(x, P, t).ratio
        psi_p = psi_set(x, P, t).ratio
        correction = correction_factor(P)

        row = (
            x, y, pi_rec.ratio, psi_rec.ratio, _quotient(pi_rec.ratio, psi_rec.ratio),
            pi_p, psi_p, correction, _quotient(pi_p, correction * psi_p),
            missing_reciprocal_sum(P),
        )
        return PipelineResult.table(CONJECTURE1_HEADER, [row], message=f"conjecture1 x={x} y={y}")


class EhPipeline(Pipeline):
    """Averaged discrepancy of primes congruent to 1 modulo d."""

    name = 'eh'

    def validate(self, x: int = None, epsilon: float = None, **kwargs) -> Optional[str]:
        if x is None or epsilon is None:
            return "x and epsilon required"
        return None

    def _run(self, x: int, epsilon: float) -> PipelineResult:
        t, _ = self.tables(x)
        value = eh_discrepancy(x, epsilon, t)

        return PipelineResult.table(EH_HEADER, [(x, epsilon, eh_modulus_bound(x, epsilon), value)],
                                    message=f"discrepancy {value:.6g}")
