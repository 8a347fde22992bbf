"""
Configuration module - settings and config management.
"""

from .settings import (
    ConfigManager,
    ToolkitConfig,
    SieveConfig,
    SolverConfig,
    SaddleConfig,
    CountingConfig,
    HarnessConfig,
    LoggingConfig,
)

__all__ = [
    "ConfigManager",
    "ToolkitConfig",
    "SieveConfig",
    "SolverConfig",
    "SaddleConfig",
    "CountingConfig",
    "HarnessConfig",
    "LoggingConfig",
]
