"""Shared exception types."""


class SpetskitError(Exception):
    """Base class for all library errors."""


class DomainError(SpetskitError):
    """Operation outside its mathematical domain (division by zero, bad Galois twist, ...)."""


class PoleError(SpetskitError):
    """Evaluation of a rational function at a pole of its reduced form."""


class CapExceededError(SpetskitError):
    """A configurable resource cap (group order, conductor) was exceeded."""


class ValidationError(SpetskitError):
    """Constructed or ingested data failed its axiom checks."""


class UnsupportedGroupError(SpetskitError):
    """The requested computation is not available for this group."""
