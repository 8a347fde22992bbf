"""
Utilities module - logging, timing, validation, CSV output.
"""

from .logging import setup_logging, get_logger, RunLogger
from .timing import timed, Stopwatch
from .csvio import FLOAT_DIGITS, format_value, render_rows, write_rows, read_table
from .validation import (
    validate_limit,
    validate_index,
    validate_nonnegative_int,
    validate_step,
    validate_open_unit,
    validate_positive,
    validate_squarefree,
)

__all__ = [
    "setup_logging",
    "get_logger",
    "RunLogger",
    "timed",
    "Stopwatch",
    "FLOAT_DIGITS",
    "format_value",
    "render_rows",
    "write_rows",
    "read_table",
    "validate_limit",
    "validate_index",
    "validate_nonnegative_int",
    "validate_step",
    "validate_open_unit",
    "validate_positive",
    "validate_squarefree",
]
