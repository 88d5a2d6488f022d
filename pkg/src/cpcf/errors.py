"""Exception types shared across the package."""


class CpcfError(Exception):
    """Base class for all package errors."""


class ParseError(CpcfError):
    """Malformed grid text or JSON configuration."""


class DomainError(CpcfError):
    """Argument outside the valid domain of an operation."""


class NonRectangularObstacle(CpcfError):
    """An obstacle component is not a filled axis-aligned rectangle."""


class ModeError(CpcfError):
    """Requested mode is incompatible with the configuration."""


class ValidationFailure(CpcfError):
    """Analytic counts disagreed with the shortest-path oracle."""


class InternalError(CpcfError):
    """An exactness invariant was violated during assembly."""


class IsolatedSiteWarning(UserWarning):
    """An accessible site has no accessible neighbors (would deadlock an agent)."""
