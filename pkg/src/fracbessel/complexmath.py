"""Phase-tracked complex numbers, branch-aware powers and the complex gamma function."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from numbers import Number

from .errors import BranchViolation, PoleError

TWO_PI = 2.0 * math.pi
POLE_TOL = 1e-12
CUT_TOL = 1e-13

# Lanczos coefficients, g = 7, n = 9
LANCZOS_G = 7.0
LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
HALF_LOG_2PI = 0.5 * math.log(TWO_PI)


@dataclass(frozen=True)
class ComplexValue:
    """A complex number whose argument may carry extra turns.

    The effective argument is ``atan2(im, re) + 2*pi*winding``.  Plain
    arithmetic always yields ``winding == 0``; only :func:`rotate` (or an
    explicit constructor call) produces other windings.
    """

    re: float
    im: float = 0.0
    winding: int = 0

    @classmethod
    def of(cls, value) -> "ComplexValue":
        if isinstance(value, ComplexValue):
            return value
        z = complex(value)
        return cls(z.real, z.imag, 0)

    @classmethod
    def polar(cls, r: float, theta: float) -> "ComplexValue":
        re, im = r * math.cos(theta), r * math.sin(theta)
        principal = math.atan2(im + 0.0, re)
        winding = int(round((theta - principal) / TWO_PI))
        return cls(re, im + 0.0, winding)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    @property
    def modulus(self) -> float:
        return math.hypot(self.re, self.im)

    @property
    def principal_arg(self) -> float:
        return math.atan2(self.im + 0.0, self.re)

    @property
    def arg(self) -> float:
        return self.principal_arg + TWO_PI * self.winding

    def log(self) -> complex:
        return complex(math.log(self.modulus), self.arg)

    # plain arithmetic: results are ordinary numbers with winding 0
    def _binary(self, other, op):
        if isinstance(other, ComplexValue):
            other = complex(other)
        elif not isinstance(other, Number):
            return NotImplemented
        return ComplexValue.of(op(complex(self), other))

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binary(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._binary(other, lambda a, b: b * a)

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __neg__(self):
        return ComplexValue(-self.re, -self.im, 0)

    def __abs__(self) -> float:
        return self.modulus


@dataclass(frozen=True)
class PhaseConvention:
    """Where winding-0 values put their branch cut.

    Winding-0 arguments are mapped into ``(c - 2pi, c]`` when ``c > 0`` and
    into ``[c, c + 2pi)`` otherwise, so ``c = pi`` is the principal branch and
    ``c = 0`` gives phase 0 on the upper edge of a cut along the positive real
    axis.  Values with nonzero winding keep their effective argument.
    """

    branch_cut_angle: float = 0.0

    def __post_init__(self):
        if not (-math.pi < self.branch_cut_angle <= math.pi):
            raise ValueError("branch_cut_angle must lie in (-pi, pi]")

    def argument(self, v: ComplexValue) -> float:
        if v.winding != 0:
            return v.arg
        c = self.branch_cut_angle
        a = v.principal_arg
        r = v.modulus
        if c > 0:
            lo, hi = c - TWO_PI, c
            while a > hi:
                a -= TWO_PI
            while a <= lo:
                a += TWO_PI
            open_edge = lo
        else:
            lo, hi = c, c + TWO_PI
            while a < lo:
                a += TWO_PI
            while a >= hi:
                a -= TWO_PI
            open_edge = hi
        if r > 0 and abs(a - open_edge) <= CUT_TOL:
            raise BranchViolation(f"value {complex(v)} lies on the branch cut at angle {c}")
        return a


PRINCIPAL = PhaseConvention(math.pi)
LOOP = PhaseConvention(0.0)


def rotate(v, angle: float) -> ComplexValue:
    """Multiply by e^{i angle}, keeping the modulus and advancing the effective argument."""
    v = ComplexValue.of(v)
    return ComplexValue.polar(v.modulus, v.arg + angle)


def cpow(base, exponent, convention: PhaseConvention = LOOP) -> ComplexValue:
    """base**exponent using the effective argument of ``base``."""
    base = ComplexValue.of(base)
    e = complex(exponent)
    r = base.modulus
    if r == 0.0:
        if e.real > 0:
            return ComplexValue(0.0, 0.0)
        raise PoleError("zero base needs an exponent with positive real part")
    theta = convention.argument(base)
    return ComplexValue.of(cmath.exp(e * complex(math.log(r), theta)))


def lanczos_loggamma(z: complex) -> complex:
    """log Gamma(z) for Re z >= 1/2 (Lanczos, g = 7)."""
    zm = z - 1.0
    acc = LANCZOS_C[0]
    for i in range(1, 9):
        acc += LANCZOS_C[i] / (zm + i)
    t = zm + LANCZOS_G + 0.5
    return HALF_LOG_2PI + (zm + 0.5) * cmath.log(t) - t + cmath.log(acc)


def _check_pole(z: complex) -> None:
    if z.real <= 0.5 and abs(z.imag) <= POLE_TOL:
        n = round(z.real)
        if n <= 0 and abs(z.real - n) <= POLE_TOL:
            raise PoleError(f"Gamma has a pole at {z}")


def loggamma(z) -> complex:
    """A logarithm of Gamma(z); exp() of it is Gamma(z) (the branch is not the principal one)."""
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        return math.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - lanczos_loggamma(1.0 - z)
    return lanczos_loggamma(z)


def gamma(z) -> complex:
    """Gamma(z) as a Python complex."""
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * cmath.exp(lanczos_loggamma(1.0 - z)))
    return cmath.exp(lanczos_loggamma(z))


def rgamma(z) -> complex:
    """1/Gamma(z), zero at the poles."""
    z = complex(z)
    try:
        return 1.0 / gamma(z)
    except PoleError:
        return 0j


def cgamma(z) -> ComplexValue:
    """Complex gamma function; raises PoleError at non-positive integers."""
    return ComplexValue.of(gamma(complex(z)))


def as_complex(v) -> complex:
    return complex(v)
