"""Integral representations of Bessel functions: Mehler-Sonine, Hankel loop and Poisson forms.

These evaluate J, Y, H1, H2 and I by one-dimensional quadrature alone and
serve as independent routes to compare with :mod:`fracbessel.besselcore`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import contours
from .besselcore import BesselKind
from .complexmath import gamma, rgamma
from .errors import PoleError, ValidityError

QUAD_TOL = 1e-11
SQRT_PI = math.sqrt(math.pi)
# below this Re(lambda) the real Poisson integral is too singular at t = 1
POISSON_MARGIN = -0.45


class Family(str, Enum):
    MEHLER_SONINE = "mehler_sonine"
    HANKEL_LOOP = "hankel_loop"
    POISSON = "poisson"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower().replace("-", "_"))
        except ValueError:
            raise ValueError(f"unknown representation family {value!r}") from None


FAMILY_KINDS = {
    Family.MEHLER_SONINE: {BesselKind.H1, BesselKind.H2, BesselKind.J, BesselKind.Y},
    Family.HANKEL_LOOP: {BesselKind.H1, BesselKind.H2},
    Family.POISSON: {BesselKind.J, BesselKind.I},
}


@dataclass(frozen=True)
class ReprRequest:
    kind: BesselKind
    order: complex
    x: complex
    family: Family
    ray_angle: float | None = None
    tol: float = QUAD_TOL

    def __post_init__(self):
        object.__setattr__(self, "kind", BesselKind.parse(self.kind))
        object.__setattr__(self, "family", Family.parse(self.family))
        object.__setattr__(self, "order", complex(self.order))
        object.__setattr__(self, "x", complex(self.x))
        if self.kind not in FAMILY_KINDS[self.family]:
            raise ValidityError(f"{self.family.value} does not represent {self.kind.value}")
        if self.x == 0:
            raise ValidityError("x must be nonzero")


def _up_angle(x: complex, sign: float) -> float:
    """Direction of t along which Im(x t) -> +inf (sign = 1) or -inf (sign = -1)."""
    return sign * 0.5 * math.pi - cmath.phase(x)


# --------------------------------------------------------- Mehler-Sonine


def _mehler_integral(mu: complex, x: complex, sign: float, tol: float, angle: float | None) -> complex:
    """int_1^inf (t^2-1)^{-mu-1/2} e^{sign i x t} dt.

    Real x: the stretch [1, 1+L] on the axis, then a ray turned to where
    e^{ixt} decays.  Complex x: e^{ixt} may grow along the axis, so the
    whole path is the decaying ray from t = 1.
    """
    a = -mu - 0.5
    beta = max(0.0, (mu + 0.5).real)
    theta = _up_angle(x, sign) if angle is None else angle
    rate = abs(x) * math.sin(sign * (cmath.phase(x) + theta))
    if not rate > 0:
        raise ValidityError("ray direction gives no decay of e^{ixt}")

    def g(pts):
        d = pts.offset(1.0)
        return np.exp(a * (np.log(d) + np.log(pts.t + 1.0)) + sign * 1j * x * pts.t)

    if x.imag != 0 or x.real < 0:
        v, _ = contours.integrate(g, contours.ray(1.0, theta, start_exponent=beta or None, decay_rate=rate), tol)
        return v
    b = 1.0 + max(10.0, 20.0 / abs(x))
    v1, _ = contours.integrate(g, contours.segment(1.0, b, beta or None, None), tol)
    v2, _ = contours.integrate(g, contours.ray(b, theta, decay_rate=rate), tol)
    return v1 + v2


def mehler_sonine(r: ReprRequest) -> complex:
    """Mehler-Sonine forms over (1, inf); H1/H2 for Re mu < 1/2, J/Y for real x > 0 and |Re mu| < 1/2."""
    if r.family != Family.MEHLER_SONINE:
        raise ValidityError("request is not for the Mehler-Sonine family")
    mu, x = r.order, r.x
    if not mu.real < 0.5:
        raise ValidityError("Mehler-Sonine forms need Re mu < 1/2")
    if r.kind in (BesselKind.J, BesselKind.Y):
        if not (x.imag == 0 and x.real > 0):
            raise ValidityError("J/Y Mehler-Sonine forms need real x > 0")
        if not mu.real > -0.5:
            raise ValidityError("J/Y Mehler-Sonine forms need -1/2 < Re mu < 1/2")
    pref = (2.0 / SQRT_PI) * (2.0 / x) ** mu * rgamma(0.5 - mu)
    if r.kind == BesselKind.H1:
        return -1j * pref * _mehler_integral(mu, x, 1.0, r.tol, r.ray_angle)
    if r.kind == BesselKind.H2:
        return 1j * pref * _mehler_integral(mu, x, -1.0, r.tol, r.ray_angle)
    # J = (H1 + H2)/2 -> sin form, Y = (H1 - H2)/(2i) -> -cos form
    a = None if r.ray_angle is None else abs(r.ray_angle)
    ip = _mehler_integral(mu, x, 1.0, r.tol, a)
    im = _mehler_integral(mu, x, -1.0, r.tol, None if a is None else -a)
    if r.kind == BesselKind.J:
        return pref * (ip - im) / 2j
    return -pref * (ip + im) / 2


# ------------------------------------------------------------ Hankel loop


def hankel_loop(r: ReprRequest) -> complex:
    """H1/H2 from the loop (inf, 1+, inf) integral of (t^2-1)^{mu-1/2} e^{+-ixt}; any mu except 1/2 + k."""
    if r.family != Family.HANKEL_LOOP:
        raise ValidityError("request is not for the Hankel-loop family")
    mu, x = r.order, r.x
    a = 0.5 - mu
    if abs(a.imag) <= 1e-12 and a.real <= 1e-12 and abs(a.real - round(a.real)) <= 1e-12:
        raise PoleError(f"Gamma(1/2 - mu) has a pole at mu = {mu}; the loop form is not used there")
    sign = 1.0 if r.kind == BesselKind.H1 else -1.0
    theta = _up_angle(x, sign) if r.ray_angle is None else r.ray_angle
    rate = abs(x) * math.sin(sign * (cmath.phase(x) + theta))
    if not rate > 0:
        raise ValidityError("ray direction gives no decay of e^{ixt}")
    # |e^{ixt}| varies by e^{2|x|r} round the circle; keep that modest
    c = contours.loop_contour("inf", 1.0, min(0.5, 1.0 / abs(x)), theta, decay_rate=rate)
    e = mu - 0.5

    def g(pts):
        return np.exp(e * (pts.log_around + np.log(pts.t + 1.0)) + sign * 1j * x * pts.t)

    v, _ = contours.integrate(g, c, r.tol)
    pref = (1.0 / SQRT_PI) * (x / 2.0) ** mu * gamma(a) / math.pi
    if r.kind == BesselKind.H1:
        return 1j * pref * cmath.exp(-2j * math.pi * mu) * v
    return -1j * pref * v


# --------------------------------------------------------------- Poisson


def _poisson_real(lam: complex, x: complex, hyperbolic: bool, tol: float) -> complex:
    a = lam - 0.5
    beta = max(0.0, -a.real)
    f = np.cosh if hyperbolic else np.cos

    def g(pts):
        d = -pts.offset(1.0)  # 1 - t
        return np.exp(a * (np.log(d) + np.log(1.0 + pts.t))) * f(x * pts.t)

    v, _ = contours.integrate(g, contours.segment(0.0, 1.0, None, beta or None), tol)
    return 2.0 / SQRT_PI * rgamma(lam + 0.5) * (x / 2.0) ** lam * v


def _poisson_loop(lam: complex, x: complex, hyperbolic: bool, tol: float) -> complex:
    a = 0.5 - lam
    if abs(a.imag) <= 1e-12 and a.real <= 1e-12 and abs(a.real - round(a.real)) <= 1e-12:
        raise PoleError(f"Gamma(1/2 - lambda) has a pole at lambda = {lam}")
    f = np.cosh if hyperbolic else np.cos
    c = contours.loop_contour(1.0, 0.0, endpoint_exponent=0.5)
    e = lam - 0.5

    def g(pts):
        w = -pts.offset(1.0)  # 1 - v
        return np.exp(e * pts.log_around - 0.5 * np.log(w)) * f(x * np.sqrt(w))

    v, _ = contours.integrate(g, c, tol)
    pref = cmath.exp(-1j * math.pi * (lam + 0.5)) * gamma(a) / SQRT_PI * (x / 2.0) ** lam / (2j * math.pi)
    return pref * v


def poisson(r: ReprRequest, form: str | None = None) -> complex:
    """J or I from the Poisson integral over (0, 1) (Re lambda > -1/2) or its loop form."""
    if r.family != Family.POISSON:
        raise ValidityError("request is not for the Poisson family")
    lam, x = r.order, r.x
    hyper = r.kind == BesselKind.I
    if form is None:
        form = "real" if lam.real > POISSON_MARGIN else "loop"
    if form == "real":
        if not lam.real > -0.5:
            raise ValidityError("the real Poisson integral needs Re lambda > -1/2")
        return _poisson_real(lam, x, hyper, r.tol)
    if form == "loop":
        return _poisson_loop(lam, x, hyper, r.tol)
    raise ValueError(f"unknown Poisson form {form!r}")


def represent(r: ReprRequest) -> complex:
    if r.family == Family.MEHLER_SONINE:
        return mehler_sonine(r)
    if r.family == Family.HANKEL_LOOP:
        return hankel_loop(r)
    return poisson(r)


__all__ = ["Family", "ReprRequest", "FAMILY_KINDS", "mehler_sonine", "hankel_loop", "poisson", "represent"]
