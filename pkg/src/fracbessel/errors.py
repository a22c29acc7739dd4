"""Exception hierarchy shared by every module of the package."""


class FracBesselError(Exception):
    """Base class for all errors raised by fracbessel."""


class PoleError(FracBesselError, ZeroDivisionError):
    """A gamma-function pole was hit (argument at a non-positive integer)."""


class BranchViolation(FracBesselError, ValueError):
    """A value sits on a declared branch cut, so its phase is ambiguous."""


class DomainError(FracBesselError, ValueError):
    """Argument outside the domain of the function (e.g. z = 0 for Y, K)."""


class ConvergenceError(FracBesselError, ArithmeticError):
    """A series or asymptotic expansion failed to reach its error target."""


class GeometryError(FracBesselError, ValueError):
    """Contour geometry is inconsistent (radius too large, path hits a singularity)."""


class QuadratureNonConvergence(FracBesselError, ArithmeticError):
    """Adaptive quadrature hit its subdivision or refinement limit."""

    def __init__(self, message, value=None, err_estimate=None):
        super().__init__(message)
        self.value = value
        self.err_estimate = err_estimate


class TailError(FracBesselError, ValueError):
    """An infinite ray could not be truncated with a guaranteed tail bound."""


class ValidityError(FracBesselError, ValueError):
    """Parameters fall outside the validity strip of the requested formula."""


class RadiusError(FracBesselError, ValueError):
    """Group parameter lies outside the convergence disc of a Lommel series."""


class ConfigError(FracBesselError, ValueError):
    """Invalid verification-suite configuration."""


class IoError(FracBesselError, OSError):
    """Report could not be written."""
