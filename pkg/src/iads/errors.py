"""Exception types shared across the package."""


class DomainError(ValueError):
    """An operation was called outside its domain (mismatched backend, non-divisor, ...)."""


class InfiniteIndex(DomainError):
    """The requested enumeration needs a finite-index image but the index is infinite."""


class NeedsUnitP(DomainError):
    """A constraint carried the unit of P where a non-unit element is required."""


class InvalidSystem(ValueError):
    """A dynamical system description violates a construction-time invariant."""
