"""
Configuration management for the smooth-phi toolkit.

Provides dataclass-based configuration with:
- File persistence (YAML)
- Environment variable override of the config path
- Sensible defaults
- Validation
"""

from dataclasses import dataclass, field, asdict
from typing import Dict, Any, Optional, List
from pathlib import Path
import os
import logging

from ..core.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = 'SMOOTHPHI_CONFIG'


@dataclass
class SieveConfig:
    """Sieve table limits."""
    max_limit: int = 10**8
    allow_override: bool = False


@dataclass
class SolverConfig:
    """Delay integral equation solver defaults."""
    step: float = 1.0 / 256
    umax: float = 20.0
    log_threshold: float = 1e-300
    on_step_mismatch: str = 'resample'  # 'resample' or 'reject'


@dataclass
class SaddleConfig:
    """Saddle-point root finding."""
    rtol: float = 1e-9
    xtol: float = 1e-12
    initial_bracket: float = 1.0
    max_doublings: int = 60
    max_bisections: int = 200
    tail_ratio: float = 1e-16
    tail_steps: int = 10


@dataclass
class CountingConfig:
    """Counting and identity-suite parameters."""
    chain_node_budget: int = 5_000_000
    lemma33_truncation: int = 10**40
    lemma33_max_k: int = 100
    lemma33_tolerance: float = 1e-9
    lemma32_max_m: int = 210
    lemma32_max_x: int = 100
    lemma42_max_r: int = 50
    lemma42_max_k: int = 3
    lemma42_x_values: List[int] = field(default_factory=lambda: [10, 100, 1000, 10000])


@dataclass
class HarnessConfig:
    """Experiment runner defaults."""
    parallelism: int = 1
    float_digits: int = 12
    default_u: float = 2.0
    default_k: int = 1


@dataclass
class LoggingConfig:
    """Logging configuration."""
    level: str = 'INFO'
    file_path: Optional[str] = None
    format: str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    max_bytes: int = 10_000_000
    backup_count: int = 5
    console_output: bool = True
    run_log_path: Optional[str] = None


@dataclass
class ToolkitConfig:
    """
    Main toolkit configuration.

    Contains all sub-configurations of the toolkit.
    """
    sieve: SieveConfig = field(default_factory=SieveConfig)
    solver: SolverConfig = field(default_factory=SolverConfig)
    saddle: SaddleConfig = field(default_factory=SaddleConfig)
    counting: CountingConfig = field(default_factory=CountingConfig)
    harness: HarnessConfig = field(default_factory=HarnessConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)


_SECTIONS = ('sieve', 'solver', 'saddle', 'counting', 'harness', 'logging')


class ConfigManager:
    """
    Configuration manager with file persistence.

    Handles loading, saving, and accessing configuration.
    The config path is taken from the argument, then from the
    SMOOTHPHI_CONFIG environment variable, then the default location.

    Attributes:
        DEFAULT_CONFIG_PATH: Default location for config file.
    """

    DEFAULT_CONFIG_PATH = Path.home() / '.smoothphi' / 'config.yaml'

    def __init__(self, config_path: str = None):
        """
        Initialize configuration manager.

        Args:
            config_path: Optional path to config file.
                        Uses SMOOTHPHI_CONFIG or the default if not specified.
        """
        env_path = os.environ.get(CONFIG_ENV_VAR)
        if config_path:
            self.config_path = Path(config_path)
        elif env_path:
            self.config_path = Path(env_path)
        else:
            self.config_path = self.DEFAULT_CONFIG_PATH
        self.config = ToolkitConfig()
        self._load()

    def _load(self) -> None:
        """Load configuration from file."""
        if not self.config_path.exists():
            logger.debug(f"Config file not found, using defaults: {self.config_path}")
            return

        import yaml

        try:
            with open(self.config_path, 'r') as f:
                data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            raise ConfigurationError(f"Error loading config {self.config_path}: {e}")

        self._apply_config(data)
        logger.info(f"Loaded config from {self.config_path}")

    def _apply_config(self, data: dict) -> None:
        """Apply loaded config data to config object."""
        for section in _SECTIONS:
            if section in data:
                self._update_dataclass(getattr(self.config, section), data[section] or {})

    def _update_dataclass(self, obj: Any, data: dict) -> None:
        """Update dataclass fields from dictionary."""
        for key, value in data.items():
            if hasattr(obj, key):
                setattr(obj, key, value)
            else:
                logger.warning(f"Ignoring unknown config key: {key}")

    def save(self) -> None:
        """Save configuration to file."""
        import yaml

        self.config_path.parent.mkdir(parents=True, exist_ok=True)

        with open(self.config_path, 'w') as f:
            yaml.dump(self._config_to_dict(), f, default_flow_style=False, sort_keys=False)

        logger.info(f"Saved config to {self.config_path}")

    def _config_to_dict(self) -> dict:
        """Convert config to dictionary."""
        return {section: asdict(getattr(self.config, section)) for section in _SECTIONS}

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value by dot-notation key.

        Args:
            key: Config key (e.g., 'solver.step').
            default: Default value if key not found.

        Returns:
            Config value or default.
        """
        parts = key.split('.')
        obj = self.config

        for part in parts:
            if hasattr(obj, part):
                obj = getattr(obj, part)
            else:
                return default

        return obj

    def set(self, key: str, value: Any) -> None:
        """
        Set configuration value.

        Args:
            key: Config key (e.g., 'harness.parallelism').
            value: Value to set.
        """
        parts = key.split('.')
        obj = self.config

        for part in parts[:-1]:
            if hasattr(obj, part):
                obj = getattr(obj, part)
            else:
                raise KeyError(f"Invalid config key: {key}")

        if hasattr(obj, parts[-1]):
            setattr(obj, parts[-1], value)
        else:
            raise KeyError(f"Invalid config key: {key}")

    def reset(self) -> None:
        """Reset to default configuration."""
        self.config = ToolkitConfig()
        logger.info("Config reset to defaults")

    def validate(self) -> List[str]:
        """
        Validate configuration.

        Returns:
            List of validation error messages (empty if valid).
        """
        errors = []
        cfg = self.config

        if cfg.sieve.max_limit < 2:
            errors.append("sieve.max_limit must be at least 2")

        step = cfg.solver.step
        if not (0 < step <= 1.0 / 16):
            errors.append(f"solver.step must lie in (0, 1/16], got {step}")
        elif abs(1.0 / step - round(1.0 / step)) > 1e-9 / step:
            errors.append(f"1/solver.step must be an integer, got step {step}")

        if cfg.solver.umax < 1:
            errors.append("solver.umax must be at least 1")

        if cfg.solver.on_step_mismatch not in ('resample', 'reject'):
            errors.append(f"Invalid solver.on_step_mismatch: {cfg.solver.on_step_mismatch}")

        if not (0 < cfg.saddle.rtol < 1):
            errors.append("saddle.rtol must lie in (0, 1)")

        if cfg.counting.chain_node_budget <= 0:
            errors.append("counting.chain_node_budget must be positive")

        if cfg.harness.parallelism < 1:
            errors.append("harness.parallelism must be at least 1")

        return errors

    def __repr__(self) -> str:
        return f"ConfigManager(path={self.config_path})"
