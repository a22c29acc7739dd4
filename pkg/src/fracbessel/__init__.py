"""Fractional order shifts of Bessel functions by contour quadrature, with a verification suite."""

from .besselcore import BesselKind, BesselPoint, bessel, bessel_dz, evaluate
from .complexmath import ComplexValue, PhaseConvention, cgamma, cpow, rotate
from .contours import Contour, integrate, loop_contour
from .errors import (
    BranchViolation, ConfigError, ConvergenceError, DomainError, FracBesselError, GeometryError, IoError,
    PoleError, QuadratureNonConvergence, RadiusError, TailError, ValidityError,
)
from .fracops import (
    FracParams, Route, ShiftRequest, ShiftResult, riemann_integral, riemann_lower, shift, sonine_first,
    weyl_integral, weyl_lower, weyl_raise,
)
from .groupaction import Direction, GroupShift, group_shift, lommel_series, step
from .harness import IdentityReport, SuiteConfig, emit_report, run_suite
from .intreps import Family, ReprRequest, hankel_loop, mehler_sonine, poisson

__version__ = "0.1.0"
