"""
Timing utilities for long-running table builds and sweeps.
"""

import time
import functools
from typing import Callable, TypeVar
import logging

logger = logging.getLogger(__name__)

T = TypeVar('T')


def timed(budget: float = None, label: str = None) -> Callable:
    """
    Decorator that logs the run time of a function.

    A warning is logged when the call exceeds its budget; the result is
    returned either way.

    Args:
        budget: Expected maximum run time in seconds (None: no check).
        label: Name used in the log line (defaults to the function name).

    Returns:
        Decorated function.

    Example:
        @timed(budget=1.0)
        def build_small_table():
            pass
    """
    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        name = label or func.__name__

        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> T:
            start_time = time.perf_counter()
            result = func(*args, **kwargs)
            elapsed = time.perf_counter() - start_time

            if budget is not None and elapsed > budget:
                logger.warning(
                    f"{name} took {elapsed:.2f}s "
                    f"(budget: {budget:.2f}s)"
                )
            else:
                logger.debug(f"{name} took {elapsed:.3f}s")

            return result

        return wrapper
    return decorator


class Stopwatch:
    """Context manager measuring elapsed wall time."""

    def __init__(self):
        self.start = 0.0
        self.elapsed = 0.0

    def __enter__(self) -> 'Stopwatch':
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed = time.perf_counter() - self.start
