"""Exception hierarchy shared across the package."""
from __future__ import annotations


class DomainError(ValueError):
    """An input lies outside the domain where a formula is defined."""


class FitError(RuntimeError):
    """Least-squares coefficient extraction could not be carried out."""


class ConsistencyError(RuntimeError):
    """An internal mathematical cross-check failed.

    Raised instead of returning a value that contradicts an identity the
    computation is supposed to satisfy.
    """
