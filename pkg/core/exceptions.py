"""
Custom exceptions for the smooth-phi toolkit.

Exception hierarchy:
    SmoothPhiError (base)
    ├── SizeError
    ├── RangeError
    ├── DomainError
    ├── NumericError
    │   └── BudgetExceededError
    ├── IdentityFailure
    └── ConfigurationError

Every exception carries the process exit code the CLI reports for it.
"""


class SmoothPhiError(Exception):
    """
    Base exception for all toolkit errors.

    All custom exceptions inherit from this class,
    allowing catch-all error handling.
    """

    exit_code = 1

    def __init__(self, message: str = None, details: dict = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class SizeError(SmoothPhiError):
    """
    Table size outside the allowed range.

    Raised when:
    - A sieve limit is below the minimum
    - A sieve limit exceeds the configured cap without override
    """

    exit_code = 4

    def __init__(self, limit: int = None, cap: int = None, **kwargs):
        message = f"Table limit out of range: {limit}"
        if cap is not None:
            message += f" (cap: {cap})"
        super().__init__(message, **kwargs)
        self.limit = limit
        self.cap = cap


class RangeError(SmoothPhiError):
    """
    Argument exceeds the range covered by a table.

    Raised when:
    - n is above the sieve limit of the table it is looked up in
    - x is above the limit of a prime set
    """

    exit_code = 4

    def __init__(self, name: str = None, value: int = None, limit: int = None, **kwargs):
        message = f"{name or 'value'}={value} outside table range"
        if limit is not None:
            message += f" (limit: {limit})"
        super().__init__(message, **kwargs)
        self.name = name
        self.value = value
        self.limit = limit


class DomainError(SmoothPhiError):
    """
    Precondition or mathematical domain violated.

    Raised when:
    - Solver step or horizon invalid
    - Divisibility or squarefree preconditions fail
    - A nested logarithm is taken of a non-positive value
    """

    def __init__(self, message: str = "Domain error", **kwargs):
        super().__init__(message, **kwargs)


class NumericError(SmoothPhiError):
    """
    Numerical procedure failed to converge.

    Raised when:
    - Root bracket cannot be found after expansion
    - Bisection residual stays above tolerance
    """

    exit_code = 3

    def __init__(self, message: str = "Numeric non-convergence", **kwargs):
        super().__init__(message, **kwargs)


class BudgetExceededError(NumericError):
    """Enumeration visited more nodes than the configured budget."""

    def __init__(self, budget: int = None, **kwargs):
        super().__init__(f"Enumeration aborted after {budget} nodes", **kwargs)
        self.budget = budget


class IdentityFailure(SmoothPhiError):
    """
    An identity suite reported a deviation above tolerance.

    Raised when:
    - Lemma sides disagree beyond the suite tolerance
    - A bound ratio exceeds 1
    """

    exit_code = 2

    def __init__(self, suite: str = None, deviation: float = None, **kwargs):
        message = f"Identity suite failed: {suite}"
        if deviation is not None:
            message += f" (worst deviation: {deviation:.3e})"
        super().__init__(message, **kwargs)
        self.suite = suite
        self.deviation = deviation


class ConfigurationError(SmoothPhiError):
    """
    Configuration error.

    Raised when:
    - Config file cannot be parsed
    - Invalid config values
    """

    def __init__(self, message: str = "Configuration error", **kwargs):
        super().__init__(message, **kwargs)
