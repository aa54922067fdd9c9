"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the effective domain of a function."""


class InvalidParams(ValueError):
    """A parameter combination does not define a Legendre-type function."""


class QuadratureFailure(RuntimeError):
    """Numeric integration failed to reach the requested tolerance."""
