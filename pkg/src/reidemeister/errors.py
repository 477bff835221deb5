"""Exception hierarchy shared by every module."""


class ReidemeisterError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ReidemeisterError, ValueError):
    """Malformed or invalid input (bad shapes, non-permutations, broken chains)."""

    def __init__(self, message, field=None):
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field


class NotAutomorphismError(InputError):
    """A map that was expected to be a bijective homomorphism is not one."""


class NotNormalError(InputError):
    """A subset that was expected to be a normal subgroup is not one."""


class InfiniteResultError(ReidemeisterError):
    """An operation needs a finite Reidemeister number but got Infinite."""


class CapExceededError(ReidemeisterError):
    """A configured size cap (element count, automorphism search) was exceeded."""


class ConsistencyError(ReidemeisterError):
    """Internal inconsistency that should be impossible for valid input."""
