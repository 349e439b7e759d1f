"""Exception hierarchy shared by every module."""


class BisphereError(Exception):
    """Base class for all library errors."""


class DomainError(BisphereError, ValueError):
    """An argument lies outside the domain of the function."""


class ConvergenceError(BisphereError, RuntimeError):
    """A series or quadrature did not reach the requested tolerance."""


class DegenerateConfigurationError(BisphereError, ValueError):
    """Bispherical coordinates are undefined (spheres touching or nearly so)."""


class UnsupportedConfigurationError(BisphereError, ValueError):
    """The requested method does not cover this configuration."""


class BracketError(BisphereError, RuntimeError):
    """No sign change was found while bracketing a root."""


class IllConditionedError(BisphereError, RuntimeError):
    """A linear system is too badly scaled to solve in double precision."""
