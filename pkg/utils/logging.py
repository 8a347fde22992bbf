"""
Logging for the smooth-phi toolkit.

Everything logs under the `smoothphi` logger tree. Diagnostics go to
stderr (and optionally a rotating file) so CSV on stdout stays clean.
Pipeline runs are additionally recorded by RunLogger as JSON lines.
"""

import logging
import sys
from collections import Counter
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import List, Dict, Any, Optional, TYPE_CHECKING
from datetime import datetime
import json

if TYPE_CHECKING:
    from ..config.settings import LoggingConfig

ROOT_LOGGER = 'smoothphi'

_loggers: Dict[str, logging.Logger] = {}
_initialized = False


def setup_logging(config: 'LoggingConfig', force: bool = False) -> None:
    """
    Configure the `smoothphi` logger tree once per process.

    Args:
        config: LoggingConfig instance.
        force: Replace handlers installed by an earlier call.
    """
    global _initialized

    if _initialized and not force:
        return

    root = logging.getLogger(ROOT_LOGGER)
    root.setLevel(getattr(logging, config.level.upper(), logging.INFO))
    root.propagate = False
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(config.format)

    if config.console_output:
        stderr = logging.StreamHandler(sys.stderr)
        stderr.setFormatter(formatter)
        root.addHandler(stderr)

    if config.file_path:
        path = Path(config.file_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        rotating = RotatingFileHandler(path, maxBytes=config.max_bytes,
                                       backupCount=config.backup_count)
        rotating.setFormatter(formatter)
        root.addHandler(rotating)

    if not root.handlers:
        root.addHandler(logging.NullHandler())

    _initialized = True


def get_logger(name: str) -> logging.Logger:
    """
    Logger `smoothphi.<name>`, cached.

    Args:
        name: Component name.
    """
    full_name = f'{ROOT_LOGGER}.{name}'
    logger = _loggers.get(full_name)
    if logger is None:
        logger = _loggers[full_name] = logging.getLogger(full_name)
    return logger


def _row_count(result: Any) -> Optional[int]:
    data = getattr(result, 'data', None)
    if isinstance(data, dict) and 'rows' in data:
        return len(data['rows'])
    return None


class RunLogger:
    """
    Record of pipeline runs.

    Each run keeps its parameters, outcome, exit code, row count and
    duration, so a sweep can be repeated from its log and table-size
    timings compared across runs. With a log path every entry is also
    appended to a JSON-lines file.
    """

    def __init__(self, log_path: str = None):
        """
        Args:
            log_path: JSON-lines run log file, or None for memory only.
        """
        self.log_path = log_path
        self.runs: List[Dict[str, Any]] = []
        self._logger = get_logger('RunLogger')

    def log_run(self, pipeline: str, params: dict, result: Any, duration: float) -> None:
        """
        Record one pipeline run.

        Args:
            pipeline: Pipeline name.
            params: Keyword arguments the pipeline ran with.
            result: PipelineResult (or any object with .success).
            duration: Wall time in seconds.
        """
        entry = {
            'timestamp': datetime.now().isoformat(),
            'pipeline': pipeline,
            'params': {k: str(v) for k, v in params.items()},
            'success': getattr(result, 'success', None),
            'exit_code': getattr(result, 'exit_code', None),
            'rows': _row_count(result),
            'message': getattr(result, 'message', str(result)),
            'duration': duration,
        }
        self.runs.append(entry)
        self._logger.debug(f"{pipeline}: exit {entry['exit_code']} in {duration:.3f}s")

        if self.log_path:
            self._append(entry)

    def _append(self, entry: dict) -> None:
        try:
            with open(self.log_path, 'a') as f:
                f.write(json.dumps(entry) + '\n')
        except OSError as e:
            self._logger.error(f"Cannot append to run log {self.log_path}: {e}")

    def clear(self) -> None:
        """Forget the in-memory runs; the file is left alone."""
        self.runs.clear()

    def get_summary(self) -> Dict[str, Any]:
        """
        Totals over the recorded runs.

        Returns:
            {'total': 0} when nothing ran; otherwise run counts, exit-code
            and per-pipeline tallies, and total and mean duration.
        """
        if not self.runs:
            return {'total': 0}

        total_duration = sum(r['duration'] for r in self.runs)
        return {
            'total': len(self.runs),
            'successful': sum(1 for r in self.runs if r['success']),
            'failed': sum(1 for r in self.runs if r['success'] is False),
            'exit_codes': dict(Counter(r['exit_code'] for r in self.runs)),
            'by_pipeline': dict(Counter(r['pipeline'] for r in self.runs)),
            'total_duration': total_duration,
            'avg_duration': total_duration / len(self.runs),
        }
