"""
Identity-suite pipelines.

Each suite runs as its own pipeline; IdentitiesPipeline runs all three
without stopping on failure and reports the worst deviation of each.
"""

from typing import List, Optional

from .base import CompositePipeline, Pipeline, PipelineResult
from ..core.exceptions import IdentityFailure
from ..counting.identities import SuiteReport, lemma32_suite, lemma33_suite, lemma42_suite

SUITE_HEADER = ('suite', 'cases', 'worst_deviation', 'status')


class SuitePipeline(Pipeline):
    """Runs one suite; a failed suite becomes an IdentityFailure result."""

    def _report(self) -> SuiteReport:
        raise NotImplementedError

    def _run(self, **kwargs) -> PipelineResult:
        report = self._report()
        if not report.passed:
            failure = IdentityFailure(report.name, report.worst_deviation, details=report.worst_case)
            return PipelineResult.fail(
                error=failure.message,
                message=f"{report.name} failed",
                data=report,
                exit_code=failure.exit_code
            )
        return PipelineResult.ok(
            message=f"{report.name}: {report.cases} cases, worst {report.worst_deviation:.3e}",
            data=report
        )


class Lemma32Pipeline(SuitePipeline):
    """Divisor-sum identity, exact."""

    name = 'lemma32'

    def _report(self) -> SuiteReport:
        c = self.config.counting
        return lemma32_suite(c.lemma32_max_m, c.lemma32_max_x)


class Lemma33Pipeline(SuitePipeline):
    """Log-sum identity within tolerance."""

    name = 'lemma33'

    def _report(self) -> SuiteReport:
        c = self.config.counting
        return lemma33_suite(c.lemma33_max_k, c.lemma33_truncation, c.lemma33_tolerance)


class Lemma42Pipeline(SuitePipeline):
    """Chain-sum bound ratios <= 1."""

    name = 'lemma42'

    def _report(self) -> SuiteReport:
        c = self.config.counting
        t, _ = self.tables(max(c.lemma42_x_values))
        return lemma42_suite(t, c.lemma42_max_r, c.lemma42_max_k, c.lemma42_x_values,
                             c.chain_node_budget)


class IdentitiesPipeline(CompositePipeline):
    """All identity suites; a table with one row per suite."""

    name = 'identities'

    def __init__(self, toolkit):
        super().__init__(
            toolkit,
            [Lemma32Pipeline(toolkit), Lemma33Pipeline(toolkit), Lemma42Pipeline(toolkit)],
            stop_on_failure=False
        )

    def _run(self, **kwargs) -> PipelineResult:
        result = super()._run(**kwargs)

        rows: List[tuple] = []
        for sub in result.data:
            if isinstance(sub.data, SuiteReport):
                rows.append(sub.data.to_row())
            else:
                rows.append((sub.message, None, None, 'error'))

        result.data = {'header': SUITE_HEADER, 'rows': rows}
        return result

    def validate(self, **kwargs) -> Optional[str]:
        return None
