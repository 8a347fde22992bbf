"""
Smooth-phi Toolkit

Smooth values of iterated Euler phi: exact sieve counts, delay integral
equation densities, saddle-point asymptotics and an experiment harness.
"""

from threading import Lock
from typing import Optional, Tuple

from .core.exceptions import (
    SmoothPhiError,
    SizeError,
    RangeError,
    DomainError,
    NumericError,
    BudgetExceededError,
    IdentityFailure,
    ConfigurationError,
)
from .config.settings import ConfigManager, ToolkitConfig
from .sieve.tables import SpfTable, TotientTable

__version__ = "0.3.0"
__all__ = [
    "SmoothPhiToolkit",
    "ConfigManager",
    "ToolkitConfig",
    "SpfTable",
    "TotientTable",
    "SmoothPhiError",
    "SizeError",
    "RangeError",
    "DomainError",
    "NumericError",
    "BudgetExceededError",
    "IdentityFailure",
    "ConfigurationError",
]


class SmoothPhiToolkit:
    """
    Main entry point for the toolkit.

    Owns the configuration, the logging setup, the run log and a cache of
    sieve tables shared by every pipeline.

    Usage:
        toolkit = SmoothPhiToolkit()

        result = toolkit.pipelines.rho(u=2.0)
        print(result.metadata['value'])

        result = toolkit.pipelines.count(x=10**6, y=1000, k=1)
        print(result.to_csv())

    Attributes:
        config: Toolkit configuration
        config_manager: Loader the configuration came from
        run_logger: Records every pipeline run
        pipelines: Pipeline registry
    """

    def __init__(self, config_path: str = None):
        """
        Initialize the toolkit.

        Args:
            config_path: Optional path to config file.
                        Uses SMOOTHPHI_CONFIG or the default location if not specified.

        Raises:
            ConfigurationError: If the config file is unreadable or invalid.
        """
        from .pipelines import PipelineRegistry
        from .utils.logging import setup_logging, get_logger, RunLogger

        # Load configuration
        self.config_manager = ConfigManager(config_path)
        self.config = self.config_manager.config

        errors = self.config_manager.validate()
        if errors:
            raise ConfigurationError("Invalid configuration", details={'errors': errors})

        # Setup logging
        setup_logging(self.config.logging)
        self._logger = get_logger('SmoothPhiToolkit')
        self.run_logger = RunLogger(self.config.logging.run_log_path)

        self._tables_lock = Lock()
        self._spf: Optional[SpfTable] = None
        self._totient: Optional[TotientTable] = None

        self.pipelines = PipelineRegistry(self)

        self._logger.debug("Smooth-phi toolkit initialized")

    def tables(self, limit: int) -> Tuple[SpfTable, TotientTable]:
        """
        SPF and totient tables covering [0, limit].

        A cached table at least as large is reused; otherwise both tables
        are rebuilt at the new limit.

        Raises:
            SizeError: If limit exceeds the configured cap without override.
        """
        from .sieve.tables import build_spf, build_totient

        limit = max(int(limit), 2)
        sieve = self.config.sieve

        with self._tables_lock:
            if self._spf is None or self._spf.limit < limit:
                spf = build_spf(limit, sieve.max_limit, sieve.allow_override)
                totient = build_totient(limit, spf, sieve.max_limit, sieve.allow_override)
                self._spf, self._totient = spf, totient
            return self._spf, self._totient

    def clear_tables(self) -> None:
        """Drop the cached sieve tables."""
        with self._tables_lock:
            self._spf = None
            self._totient = None
