"""Exceptions shared across the package.

CLI exit-code contract: DomainError -> 1, PrecisionExhausted -> 2,
UndeterminedAtDepth -> 3.
"""

from __future__ import annotations

from fractions import Fraction


class BetaOrbitError(Exception):
    """Base class for all package errors."""


class DomainError(BetaOrbitError):
    """Requested value is outside the mathematical domain (e.g. Xi with Delta(alpha) > beta)."""


class PrecisionExhausted(BetaOrbitError):
    """A validated-real decision could not be made at the configured precision cap."""

    def __init__(self, message: str, needed_digits: int | None = None):
        super().__init__(message)
        self.needed_digits = needed_digits


class UndeterminedAtDepth(BetaOrbitError):
    """The case analysis did not resolve within the digit/central-prefix budget.

    Carries a frequency enclosure consistent with a balanced (Sturmian-like)
    continuation of the digits seen so far.
    """

    def __init__(self, message: str, enclosure: tuple[Fraction, Fraction] | None = None,
                 depth: int | None = None):
        super().__init__(message)
        self.enclosure = enclosure
        self.depth = depth


class HypothesisViolation(BetaOrbitError):
    """Input fell outside the theorem's hypothesis set in an unrecoverable way."""


class InternalInvariantError(BetaOrbitError):
    """A 'cannot happen' branch fired (e.g. forbidden equality in the case dispatch)."""


class NoRootError(BetaOrbitError):
    """Root isolation: the search interval contains no sign change."""


class MultipleRootsError(BetaOrbitError):
    """Root isolation: the search interval contains more than one root."""
