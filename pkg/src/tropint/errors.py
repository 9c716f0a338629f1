"""Exceptions shared across modules."""


class IdentityCheckError(AssertionError):
    """Two independent computations of the same quantity disagree."""
