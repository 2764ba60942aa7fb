"""Exception types shared by every module."""


class MingenError(Exception):
    """Base class for all errors raised by this package."""


class InputError(MingenError, ValueError):
    """Malformed or inconsistent input (bad permutation, non-subgroup, ...)."""


class ResourceError(MingenError):
    """A configured size budget would be exceeded."""


class InvariantError(MingenError, AssertionError):
    """An internal consistency check failed; this indicates a bug."""
