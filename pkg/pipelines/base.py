"""
Base classes for toolkit pipelines.

Provides:
- Abstract Pipeline base class
- PipelineResult for standardized responses
- CompositePipeline for pipeline sequences
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, TYPE_CHECKING
import logging
import time

from ..core.exceptions import SmoothPhiError
from ..utils.csvio import render_rows

if TYPE_CHECKING:
    from .. import SmoothPhiToolkit

logger = logging.getLogger(__name__)


@dataclass
class PipelineResult:
    """
    Standardized pipeline result.

    Attributes:
        success: Whether the pipeline completed successfully.
        message: Human-readable result message.
        data: Result payload; tabular pipelines put 'header' and 'rows' here.
        error: Error message if failed.
        duration: Execution time in seconds.
        metadata: Extra values (residual constants, tower sizes, ...).
        exit_code: Process exit code the CLI reports.
    """
    success: bool
    message: str = ""
    data: Any = None
    error: Optional[str] = None
    duration: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = 0

    @classmethod
    def ok(cls, message: str = "Success", data: Any = None, **kwargs) -> 'PipelineResult':
        """Create successful result."""
        return cls(success=True, message=message, data=data, **kwargs)

    @classmethod
    def fail(cls, error: str, message: str = "Failed", exit_code: int = 1, **kwargs) -> 'PipelineResult':
        """Create failed result."""
        return cls(success=False, message=message, error=error, exit_code=exit_code, **kwargs)

    @classmethod
    def table(cls, header: Sequence[str], rows: List[Sequence[Any]], message: str = "Success",
              **kwargs) -> 'PipelineResult':
        """Create successful tabular result."""
        return cls.ok(message=message, data={'header': tuple(header), 'rows': rows}, **kwargs)

    def to_csv(self, digits: int = 12) -> str:
        """Render tabular data as CSV ('' when there is none)."""
        if not isinstance(self.data, dict) or 'header' not in self.data:
            return ''
        return render_rows(self.data['header'], self.data['rows'], digits)


class Pipeline(ABC):
    """
    Base class for all pipelines.

    A pipeline validates its parameters, runs one toolkit operation and
    reports a PipelineResult. Toolkit errors become failed results carrying
    the error's exit code; every run is timed and recorded in the run log.

    Subclasses must implement:
    - _run(**kwargs): Perform the work
    - validate(**kwargs): Validate parameters (optional)

    Attributes:
        toolkit: Reference to SmoothPhiToolkit for tables and configuration.
    """

    name = 'pipeline'

    def __init__(self, toolkit: 'SmoothPhiToolkit'):
        """
        Initialize pipeline.

        Args:
            toolkit: Parent SmoothPhiToolkit instance.
        """
        self.toolkit = toolkit
        self._logger = logging.getLogger(
            f"{__name__}.{self.__class__.__name__}"
        )

    @property
    def config(self):
        """Get toolkit configuration."""
        return self.toolkit.config

    def tables(self, limit: int):
        """SPF and totient tables covering limit."""
        return self.toolkit.tables(limit)

    @abstractmethod
    def _run(self, **kwargs) -> PipelineResult:
        """
        Perform the pipeline's work.

        Returns:
            PipelineResult indicating success/failure.
        """
        pass

    def validate(self, **kwargs) -> Optional[str]:
        """
        Validate pipeline parameters.

        Returns:
            Error message if invalid, None if valid.
        """
        return None

    def execute(self, **kwargs) -> PipelineResult:
        """
        Validate, run and record the pipeline.

        Args:
            **kwargs: Pipeline-specific parameters.

        Returns:
            PipelineResult with duration set.
        """
        start_time = time.perf_counter()

        error = self.validate(**kwargs)
        if error:
            result = PipelineResult.fail(error=error, message="Invalid parameters")
        else:
            self._logger.info(f"Executing: {self.name} {kwargs or ''}")
            try:
                result = self._run(**kwargs)
            except SmoothPhiError as e:
                self._logger.error(f"{self.name} failed: {e.message}")
                result = PipelineResult.fail(
                    error=e.message,
                    message=f"{self.name} failed",
                    exit_code=e.exit_code,
                    metadata=dict(e.details)
                )

        result.duration = time.perf_counter() - start_time
        self.toolkit.run_logger.log_run(self.name, kwargs, result, result.duration)
        return result

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}()"


class CompositePipeline(Pipeline):
    """
    Pipeline composed of multiple sub-pipelines.

    Executes a sequence of pipelines, optionally
    stopping on first failure.

    Attributes:
        pipelines: List of pipelines to execute.
        stop_on_failure: If True, stop on first failed pipeline.
    """

    name = 'composite'

    def __init__(
        self,
        toolkit: 'SmoothPhiToolkit',
        pipelines: List[Pipeline] = None,
        stop_on_failure: bool = True
    ):
        """
        Initialize composite pipeline.

        Args:
            toolkit: Parent toolkit.
            pipelines: Initial list of pipelines.
            stop_on_failure: Stop if any pipeline fails.
        """
        super().__init__(toolkit)
        self.pipelines = pipelines or []
        self.stop_on_failure = stop_on_failure

    def _run(self, **kwargs) -> PipelineResult:
        """
        Execute all pipelines in sequence.

        Returns:
            PipelineResult with list of sub-results in data; the exit code
            of the first failure is propagated.
        """
        results = []

        for pipeline in self.pipelines:
            result = pipeline.execute(**kwargs)
            results.append(result)

            if not result.success and self.stop_on_failure:
                return PipelineResult.fail(
                    error=f"Pipeline failed: {pipeline}",
                    message="Composite pipeline stopped on failure",
                    data=results,
                    exit_code=result.exit_code
                )

        failed = [r for r in results if not r.success]
        if failed:
            return PipelineResult.fail(
                error=f"{len(failed)} of {len(results)} pipelines failed",
                message="Composite pipeline completed with failures",
                data=results,
                exit_code=failed[0].exit_code
            )

        return PipelineResult.ok(
            message=f"Completed {len(self.pipelines)} pipelines",
            data=results
        )

    def validate(self, **kwargs) -> Optional[str]:
        """Validate all sub-pipelines."""
        for pipeline in self.pipelines:
            error = pipeline.validate(**kwargs)
            if error:
                return f"{pipeline}: {error}"
        return None
