"""Exception hierarchy for lorcone.

Errors are semantic: callers can distinguish domain violations, numerical
failures (quadrature / root finding), causal-structure problems and input
format problems without parsing messages.
"""


class LorconeError(Exception):
    """Base class for all lorcone errors."""


class DomainError(LorconeError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class RangeError(LorconeError, ValueError):
    """Value outside the attainable range (e.g. null parameter beyond horizon)."""


class QuadratureError(LorconeError, ArithmeticError):
    """Adaptive quadrature did not converge to the requested tolerance.

    Carries the achieved error estimate in ``estimate``.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class RootFindError(LorconeError, ArithmeticError):
    """Root finding failed; ``bracket`` carries the last bracket tried."""

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class NotCausalError(LorconeError, ValueError):
    """A sampled path violates the per-segment causality certificate."""


class IndeterminateRelationError(LorconeError):
    """A causal-relation query landed on the null boundary of a fiber that
    cannot certify minimizing curves; no silent guess is made."""


class NonGeodesicFiberError(LorconeError, TypeError):
    """Operation requires a geodesic fiber (minimizing interpolation)."""


class AmbiguousGeodesicError(LorconeError):
    """Non-unique minimizing geodesic and no tie-break rule configured."""


class TriangleError(LorconeError, ValueError):
    """Triangle inequality (metric) or reverse triangle inequality violated."""


class SizeBoundsError(TriangleError):
    """Timelike size bounds for the requested model curvature fail."""


class RealizationError(LorconeError, ArithmeticError):
    """Comparison-triangle realization failed; ``residual`` holds the final
    side-length residual when available."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class LiftError(LorconeError, ValueError):
    """Fiber-triangle lift precondition (diameter / window) violated."""


class SamplingExhaustedError(LorconeError):
    """Triangle sampling repeatedly failed its preconditions."""

    def __init__(self, message, counts=None):
        super().__init__(message)
        self.counts = counts


class CatalogError(LorconeError, ValueError):
    """Invalid curve catalog (axiom violation or malformed record)."""


class ConfigError(LorconeError, ValueError):
    """Invalid configuration document; ``path`` is the offending field path."""

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
