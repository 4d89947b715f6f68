"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation (bad n, rank mismatch, ...)."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a bug, never bad user input."""
