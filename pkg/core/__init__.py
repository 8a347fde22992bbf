"""
Core module - error hierarchy shared by every layer.
"""

from .exceptions import (
    SmoothPhiError,
    SizeError,
    RangeError,
    DomainError,
    NumericError,
    BudgetExceededError,
    IdentityFailure,
    ConfigurationError,
)

__all__ = [
    "SmoothPhiError",
    "SizeError",
    "RangeError",
    "DomainError",
    "NumericError",
    "BudgetExceededError",
    "IdentityFailure",
    "ConfigurationError",
]
