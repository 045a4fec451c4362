"""Exception types raised by specmean."""

from __future__ import annotations


class SpecmeanError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(SpecmeanError, ValueError):
    """Operands have incompatible shapes."""


class DomainError(SpecmeanError, ValueError):
    """A matrix function was applied outside its domain.

    Carries the smallest eigenvalue that violated the positivity requirement.
    """

    def __init__(self, message: str, lambda_min: float | None = None):
        super().__init__(message)
        self.lambda_min = lambda_min


class NumericFailure(SpecmeanError, ArithmeticError):
    """An iterative routine did not converge.

    ``digest`` identifies the offending input so it can be reproduced.
    """

    def __init__(self, message: str, digest: str = ""):
        super().__init__(f"{message} [matrix {digest}]" if digest else message)
        self.digest = digest


class HypothesisViolation(SpecmeanError, AssertionError):
    """An instance handed to a check does not satisfy that check's hypothesis.

    This is a programming error in the instance sampler, never a test outcome.
    """
