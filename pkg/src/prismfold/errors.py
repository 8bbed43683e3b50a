"""Exception types shared across the package."""

from __future__ import annotations


class PrismfoldError(Exception):
    """Base class for all package-specific errors."""


class InvalidCurveError(PrismfoldError, ValueError):
    """Curve specification violates a validity requirement."""


class QuadratureError(PrismfoldError, RuntimeError):
    """Arc-length quadrature failed to converge at the maximum panel count."""


class SelfIntersectionError(PrismfoldError, RuntimeError):
    """Unfolded boundary polyline crosses itself at the current sampling.

    ``t_pairs`` holds (t_i, t_j) parameter pairs of the offending segments.
    """

    def __init__(self, message: str, t_pairs=()):
        super().__init__(message)
        self.t_pairs = list(t_pairs)


class TangencyError(PrismfoldError, ValueError):
    """Attachment rib fails the mutual-tangency requirement."""


class SceneError(PrismfoldError, ValueError):
    """Scene document is malformed or describes an invalid configuration."""
