"""Riemann and Weyl fractional integrals and the reduced order-shifting operators.

Every shift is realised in one of two forms:

* ``loop``: a contour (endpoint, 0+, endpoint) weighted by
  ``(1/2 pi i) e^{i pi mu} Gamma(mu+1) v^{-mu-1}``, valid for general ``mu``;
* ``collapsed``: the same integral folded onto one edge of the cut, weighted
  by ``1/Gamma(-mu)``, valid for ``Re mu < 0``.

Raising (``weyl_raise``) maps ``z^{-nu/2} Z_nu(sqrt z)`` to
``z^{-(nu+mu)/2} Z_{nu+mu}(sqrt z)``; ``riemann_lower`` maps ``Z_nu(x)`` to
``Z_{nu-mu}(x)`` for J and I; ``weyl_lower`` maps ``z^{nu/2} H_nu(sqrt z)``
to ``z^{(nu-mu)/2} H_{nu-mu}(sqrt z)`` and gives the J/Y mixtures.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from . import contours
from .besselcore import BesselKind, evaluate
from .complexmath import gamma, rgamma
from .errors import DomainError, QuadratureNonConvergence, TailError, ValidityError

QUAD_TOL = 1e-11
# Re mu below this uses the collapsed form when the form is not given;
# closer to 0 the endpoint singularity v^{-mu-1} is too strong for double precision
COLLAPSE_MARGIN = -0.05
RAY_ANGLE = 0.45 * math.pi


class Route(str, Enum):
    WEYL_RAISE = "weyl_raise"
    RIEMANN_LOWER = "riemann_lower"
    WEYL_LOWER = "weyl_lower"

    @classmethod
    def parse(cls, value) -> "Route":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower().replace("-", "_"))
        except ValueError:
            raise ValueError(f"unknown route {value!r}") from None


class Form(str, Enum):
    LOOP = "loop"
    COLLAPSED = "collapsed"


ROUTE_KINDS = {
    Route.WEYL_RAISE: {BesselKind.H1, BesselKind.H2, BesselKind.J, BesselKind.Y, BesselKind.K},
    Route.RIEMANN_LOWER: {BesselKind.J, BesselKind.I},
    Route.WEYL_LOWER: {BesselKind.H1, BesselKind.H2, BesselKind.J, BesselKind.Y},
}


@dataclass(frozen=True)
class FracParams:
    nu: complex
    mu: complex
    z: complex

    def __post_init__(self):
        for name in ("nu", "mu", "z"):
            object.__setattr__(self, name, complex(getattr(self, name)))


@dataclass(frozen=True)
class ShiftRequest:
    kind: BesselKind
    params: FracParams
    route: Route
    form: Form | None = None
    ray_angle: float | None = None
    loop_radius: float | None = None
    tol: float = QUAD_TOL

    def __post_init__(self):
        object.__setattr__(self, "kind", BesselKind.parse(self.kind))
        object.__setattr__(self, "route", Route.parse(self.route))
        if self.form is not None:
            object.__setattr__(self, "form", Form(str(getattr(self.form, "value", self.form)).lower()))

    @classmethod
    def make(cls, route, kind, nu, mu, z, form=None, **kw) -> "ShiftRequest":
        return cls(kind, FracParams(nu, mu, z), route, form, **kw)


@dataclass(frozen=True)
class ShiftResult:
    value: complex
    form: Form
    route: Route
    kind: BesselKind
    err_estimate: float
    checks: tuple = field(default=())


# ------------------------------------------------------------ helpers


def _bessel(kind, nu: complex, w: np.ndarray) -> np.ndarray:
    return evaluate(kind, nu, w)


def _is_nonpos_int(a: complex, tol: float = 1e-12) -> bool:
    return abs(a.imag) <= tol and a.real <= tol and abs(a.real - round(a.real)) <= tol


def _loop_weight(mu: complex) -> complex:
    """(1/2 pi i) e^{i pi mu} Gamma(mu+1)."""
    return cmath.exp(1j * math.pi * mu) * gamma(mu + 1) / (2j * math.pi)


def _cut_distance(z: complex) -> float:
    """Distance from v = 0 to the cut v + z in (-inf, 0]."""
    if (-z).real > 0:
        return abs(z.imag)
    return abs(z)


def _ray_crosses_cut(z: complex, angle: float, r: float) -> bool:
    s_ang = math.sin(angle)
    if abs(s_ang) < 1e-15:
        return z.imag == 0 and z.real + r * math.cos(angle) <= 0 and math.cos(angle) < 0
    s = -z.imag / s_ang
    return s >= r and s * math.cos(angle) + z.real <= 0


def _sign(req: ShiftRequest) -> float:
    return -1.0 if req.kind == BesselKind.H2 else 1.0


def _default_angle(kind: BesselKind) -> float:
    if kind == BesselKind.K:
        return 0.0
    return -RAY_ANGLE if kind == BesselKind.H2 else RAY_ANGLE


# ----------------------------------------------------- validity checks


def validity_violations(req: ShiftRequest, form: Form | None = None) -> list[str]:
    """Predicates that fail for ``req`` (empty when the request is valid)."""
    p = req.params
    nu, mu, z = p.nu, p.mu, p.z
    out = []
    if req.kind not in ROUTE_KINDS[req.route]:
        if req.route == Route.RIEMANN_LOWER:
            out.append(f"{req.kind.value} has no Riemann lowering: the endpoint condition fails and the "
                       "result would solve an inhomogeneous Bessel equation (Lommel-function terms)")
        else:
            out.append(f"route {req.route.value} does not apply to {req.kind.value}")
        return out
    if z == 0:
        out.append("argument must be nonzero")
    if form == Form.COLLAPSED and not mu.real < 0:
        out.append("collapsed form needs Re mu < 0")
    if form == Form.LOOP and _is_nonpos_int(mu + 1):
        out.append("loop form undefined at negative integer mu (Gamma(mu+1) pole); use the collapsed form")
    if req.route == Route.WEYL_RAISE:
        if req.kind in (BesselKind.J, BesselKind.Y) and not (mu + nu / 2 + 0.75).real > 0:
            out.append("J/Y raising needs Re(mu + nu/2 + 3/4) > 0")
        if z.imag == 0 and z.real < 0:
            out.append("z on the negative real axis")
    elif req.route == Route.RIEMANN_LOWER:
        if not nu.real > -1:
            out.append("Riemann lowering needs Re nu > -1")
        if z.imag == 0 and z.real < 0:
            out.append("x on the negative real axis")
    else:
        if z.imag == 0 and z.real < 0:
            out.append("lowering needs -pi < arg z < pi")
        if req.kind in (BesselKind.J, BesselKind.Y):
            if not (0.5 * nu.real - 0.75 < mu.real < 0):
                out.append("J/Y lowering needs Re nu/2 - 3/4 < Re mu < 0")
            if form == Form.LOOP:
                out.append("J/Y lowering exists only in the real-axis (collapsed) form")
    return out


def choose_form(req: ShiftRequest) -> Form:
    if req.form is not None:
        return req.form
    mu = req.params.mu
    if req.route == Route.WEYL_LOWER and req.kind in (BesselKind.J, BesselKind.Y):
        return Form.COLLAPSED
    if _is_nonpos_int(mu + 1):
        return Form.COLLAPSED
    return Form.COLLAPSED if mu.real <= COLLAPSE_MARGIN else Form.LOOP


def check_validity(req: ShiftRequest, form: Form | None = None) -> None:
    bad = validity_violations(req, form)
    if bad:
        raise ValidityError("; ".join(bad))


# ----------------------------------------------- single-variable integrals


def riemann_integral(f: Callable[[np.ndarray], np.ndarray], alpha, x, tol: float = QUAD_TOL,
                     start_exponent: float | None = None) -> complex:
    """(1/Gamma(alpha)) int_0^x f(t) (x-t)^{alpha-1} dt for Re alpha > 0.

    ``start_exponent`` flags an algebraic singularity of ``f`` at t = 0.
    """
    alpha = complex(alpha)
    x = complex(x)
    if not alpha.real > 0:
        raise DomainError("Riemann integral needs Re alpha > 0; use a loop-form shift instead")
    if x == 0:
        return 0j
    end_exp = max(0.0, 1.0 - alpha.real)
    c = contours.segment(0.0, x, start_exponent, end_exp if end_exp > 0 else None)

    def g(pts):
        d = -pts.offset(x)  # x - t without cancellation
        return f(pts.t) * np.exp((alpha - 1) * np.log(d))

    val, _ = contours.integrate(g, c, tol)
    return val * rgamma(alpha)


def _decay_exponent(f, x: float) -> float:
    t1, t2 = x + 1e6, x + 1e8
    a1, a2 = abs(complex(np.asarray(f(np.array([t1])))[0])), abs(complex(np.asarray(f(np.array([t2])))[0]))
    if a1 == 0 or a2 == 0:
        return -math.inf
    return math.log(a2 / a1) / math.log(t2 / t1)


def weyl_integral(f: Callable[[np.ndarray], np.ndarray], alpha, x: float, decay_rate: float | None = None,
                  decay_power: float = 1.0, tol: float = QUAD_TOL) -> complex:
    """(1/Gamma(alpha)) int_x^inf f(t) (t-x)^{alpha-1} dt for Re alpha > 0.

    With ``decay_rate`` c the integrand is taken to decay like exp(-c t^p) and
    the ray is truncated accordingly; without it ``f`` must decay
    algebraically faster than t^{-Re alpha} and [x, inf) is mapped onto [0, 1).
    """
    alpha = complex(alpha)
    x = float(x)
    if not alpha.real > 0:
        raise DomainError("Weyl integral needs Re alpha > 0; use a loop-form shift instead")
    start_exp = max(0.0, 1.0 - alpha.real)
    if decay_rate is not None:
        c = contours.ray(x, 0.0, start_exponent=start_exp if start_exp > 0 else None,
                         decay_rate=decay_rate, decay_power=decay_power)

        def g(pts):
            return f(pts.t) * np.exp((alpha - 1) * np.log(pts.offset(x)))

        val, _ = contours.integrate(g, c, tol)
        return val * rgamma(alpha)
    slope = _decay_exponent(lambda t: f(t) * (t - x) ** (alpha.real - 1), x)
    if not slope < -1.0 - 1e-3:
        raise TailError(f"integrand decays like t^{slope:.2f}; the Weyl integral diverges or needs a decay rate")

    # t = x + u/(1-u), dt = du/(1-u)^2
    def g2(u, um):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            s = u / um
            return f(x + s) * np.exp((alpha - 1) * np.log(s)) / (um * um)

    val, _ = contours.tanh_sinh(g2, tol, 0.0, 6.0)
    return val * rgamma(alpha)


# ---------------------------------------------------------- closed forms


def closed_form(req: ShiftRequest) -> complex:
    """The value the shift should produce, from besselcore alone."""
    p = req.params
    nu, mu, z = p.nu, p.mu, p.z
    if req.route == Route.WEYL_RAISE:
        lam = nu + mu
        return z ** (-lam / 2) * complex(evaluate(req.kind, lam, cmath.sqrt(z)))
    if req.route == Route.RIEMANN_LOWER:
        return complex(evaluate(req.kind, nu - mu, z))
    lam = nu - mu
    w = cmath.sqrt(z)
    pref = z ** (lam / 2)
    if req.kind in (BesselKind.H1, BesselKind.H2):
        return pref * complex(evaluate(req.kind, lam, w))
    jv = complex(evaluate(BesselKind.J, lam, w))
    yv = complex(evaluate(BesselKind.Y, lam, w))
    c, s = cmath.cos(math.pi * mu), cmath.sin(math.pi * mu)
    if req.kind == BesselKind.J:
        return pref * (c * jv + s * yv)
    return pref * (c * yv - s * jv)


# ------------------------------------------------------- Weyl-type shifts


def _weyl_contour(req: ShiftRequest, form: Form, kind: BesselKind, angle: float | None) -> contours.Contour:
    p = req.params
    z, mu = p.z, p.mu
    theta = _default_angle(kind) if angle is None else float(angle)
    dist = _cut_distance(z)
    r = req.loop_radius if req.loop_radius is not None else min(0.1, 0.5 * dist)
    if form == Form.LOOP and r >= dist:
        raise ValidityError(f"loop radius {r} reaches the singular point v = -z")
    if _ray_crosses_cut(z, theta, r if form == Form.LOOP else 0.0):
        raise ValidityError(f"ray at angle {theta:.4f} crosses the branch cut from v = -z; choose another ray_angle")
    rate = abs(math.cos(theta / 2)) if kind == BesselKind.K else abs(math.sin(theta / 2))
    if rate < 1e-3:
        raise ValidityError(f"ray angle {theta:.4f} gives no exponential decay for {kind.value}")
    if form == Form.LOOP:
        return contours.loop_contour("inf", 0.0, r, theta, decay_rate=rate, decay_power=0.5)
    return contours.ray(0.0, theta, start_exponent=1.0 + mu.real, decay_rate=rate, decay_power=0.5, around=0.0)


def _weyl_piece(req: ShiftRequest, form: Form, kind: BesselKind, sign_nu: float, angle: float | None):
    """Unweighted integral of v^{-mu-1} (v+z)^{s nu/2} Z_nu(sqrt(v+z)) on the kind's contour."""
    p = req.params
    nu, mu, z = p.nu, p.mu, p.z
    c = _weyl_contour(req, form, kind, angle)

    def g(pts):
        w = pts.offset(-z)
        lw = np.log(w)
        return np.exp((-mu - 1) * pts.log_around + sign_nu * 0.5 * nu * lw) * _bessel(kind, nu, np.sqrt(w))

    return contours.integrate(g, c, req.tol)


def _weights(mu: complex, form: Form, extra_phase: complex = 0j) -> complex:
    """Loop or collapsed weight times e^{i pi extra_phase}."""
    ph = cmath.exp(1j * math.pi * extra_phase)
    if form == Form.LOOP:
        return _loop_weight(mu) * ph
    return rgamma(-mu) * ph


def _finish(req: ShiftRequest, form: Form, value: complex, err: float) -> ShiftResult:
    return ShiftResult(complex(value), form, req.route, req.kind, float(err))


def weyl_raise(req: ShiftRequest, validate: bool = True) -> ShiftResult:
    """z^{-(nu+mu)/2} Z_{nu+mu}(sqrt z) from the Weyl-type contour integral."""
    form = choose_form(req)
    if validate:
        check_validity(req, form)
    mu = req.params.mu
    w = 2.0**mu * _weights(mu, form)
    if req.kind in (BesselKind.J, BesselKind.Y):
        # split into Hankel integrands, each with its own convergent ray
        a1 = None if req.ray_angle is None else abs(req.ray_angle)
        v1, e1 = _weyl_piece(req, form, BesselKind.H1, -1.0, a1)
        v2, e2 = _weyl_piece(req, form, BesselKind.H2, -1.0, None if a1 is None else -a1)
        val = (v1 + v2) / 2 if req.kind == BesselKind.J else (v1 - v2) / 2j
        return _finish(req, form, w * val, abs(w) * (e1 + e2))
    v, e = _weyl_piece(req, form, req.kind, -1.0, req.ray_angle)
    return _finish(req, form, w * v, abs(w) * e)


def weyl_lower(req: ShiftRequest, validate: bool = True) -> ShiftResult:
    """z^{(nu-mu)/2} H_{nu-mu}(sqrt z), or the J/Y mixtures from the real-axis integral."""
    form = choose_form(req)
    if validate:
        check_validity(req, form)
    mu = req.params.mu
    if req.kind in (BesselKind.H1, BesselKind.H2):
        # extra phase e^{i pi mu} (H1) relative to the raising weight, or e^{-i pi mu} (H2)
        w = 2.0**mu * _weights(mu, form, mu if req.kind == BesselKind.H1 else -mu)
        v, e = _weyl_piece(req, form, req.kind, 1.0, req.ray_angle)
        return _finish(req, form, w * v, abs(w) * e)
    # J/Y: the real-axis integral rotated onto both Hankel rays (principal phase on each)
    a1 = RAY_ANGLE if req.ray_angle is None else abs(req.ray_angle)
    v1, e1 = _weyl_piece(req, Form.COLLAPSED, BesselKind.H1, 1.0, a1)
    v2, e2 = _weyl_piece(req, Form.COLLAPSED, BesselKind.H2, 1.0, -a1)
    w = 2.0**mu * rgamma(-mu)
    val = (v1 + v2) / 2 if req.kind == BesselKind.J else (v1 - v2) / 2j
    return _finish(req, Form.COLLAPSED, w * val, abs(w) * (e1 + e2))


# ---------------------------------------------------- Riemann-type shift


def riemann_lower(req: ShiftRequest, validate: bool = True) -> ShiftResult:
    """Z_{nu-mu}(x) for Z = J, I from the loop (1, 0+, 1) or its collapsed form."""
    form = choose_form(req)
    if validate:
        check_validity(req, form)
    p = req.params
    nu, mu, x = p.nu, p.mu, p.z
    end_exp = max(0.0, -nu.real)
    if form == Form.LOOP:
        r = 0.1 if req.loop_radius is None else req.loop_radius
        c = contours.loop_contour(1.0, 0.0, r, endpoint_exponent=end_exp)
    else:
        c = contours.segment(0.0, 1.0, 1.0 + mu.real, end_exp, around=0.0, start_arg=0.0)
    kind = req.kind

    def g(pts):
        w = -pts.offset(1.0)  # 1 - v
        return np.exp((-mu - 1) * pts.log_around + 0.5 * nu * np.log(w)) * _bessel(kind, nu, x * np.sqrt(w))

    v, e = contours.integrate(g, c, req.tol)
    w = (2.0 / x) ** mu * _weights(mu, form)
    return _finish(req, form, w * v, abs(w) * e)


def riemann_z_form(kind, nu, mu, z, tol: float = QUAD_TOL) -> complex:
    """z^{(nu-mu)/2} Z_{nu-mu}(sqrt z) as 2^mu R_{-mu}[v^{nu/2} Z_nu(sqrt v)](z), Re mu < 0."""
    kind = BesselKind.parse(kind)
    nu, mu, z = complex(nu), complex(mu), complex(z)
    if kind not in ROUTE_KINDS[Route.RIEMANN_LOWER]:
        raise ValidityError(f"{kind.value} has no Riemann lowering")
    if not mu.real < 0 or not nu.real > -1:
        raise ValidityError("the real-interval form needs Re mu < 0 and Re nu > -1")

    def f(v):
        return np.exp(0.5 * nu * np.log(v)) * _bessel(kind, nu, np.sqrt(v))

    return 2.0**mu * riemann_integral(f, -mu, z, tol, start_exponent=max(0.0, -nu.real) or None)


def k_weyl_form(nu, mu, x: float, tol: float = QUAD_TOL) -> complex:
    """2^mu W_{-mu}[t^{-nu/2} K_nu(sqrt t)](x), equal to x^{-(nu+mu)/2} K_{nu+mu}(sqrt x) for Re mu < 0."""
    nu, mu = complex(nu), complex(mu)
    if not mu.real < 0:
        raise ValidityError("the Weyl integral form needs Re mu < 0")

    def f(t):
        return np.exp(-0.5 * nu * np.log(t)) * _bessel(BesselKind.K, nu, np.sqrt(t))

    return 2.0**mu * weyl_integral(f, -mu, x, decay_rate=1.0, decay_power=0.5, tol=tol)


def shift(req: ShiftRequest, validate: bool = True) -> ShiftResult:
    if req.route == Route.WEYL_RAISE:
        return weyl_raise(req, validate)
    if req.route == Route.RIEMANN_LOWER:
        return riemann_lower(req, validate)
    return weyl_lower(req, validate)


# ------------------------------------------------------------- Sonine


def sonine_trig(nu, mu, x, tol: float = QUAD_TOL) -> complex:
    """x^mu / (2^{mu-1} Gamma(mu)) int_0^{pi/2} J_nu(x sin t) cos^{2mu-1} t sin^{nu+1} t dt = J_{nu+mu}(x)."""
    nu, mu, x = complex(nu), complex(mu), complex(x)
    a = max(0.0, 1.0 - 2.0 * mu.real)
    b = max(0.0, -(2.0 * nu.real + 1.0))
    half_pi = 0.5 * math.pi
    c = contours.segment(0.0, half_pi, b or None, a or None)

    def g(pts):
        s = np.sin(pts.offset(0.0))
        co = np.sin(-pts.offset(half_pi))
        return (_bessel(BesselKind.J, nu, x * s) * np.exp((2 * mu - 1) * np.log(co) + (nu + 1) * np.log(s)))

    v, _ = contours.integrate(g, c, tol)
    return x**mu * 2.0 ** (1 - mu) * rgamma(mu) * v


def sonine_alg(nu, mu, x, tol: float = QUAD_TOL) -> complex:
    """(1/(2^{mu-1} Gamma(mu))) int_0^x t^{nu+1} J_nu(t) (x^2 - t^2)^{mu-1} dt = x^{nu+mu} J_{nu+mu}(x)."""
    nu, mu, x = complex(nu), complex(mu), complex(x)
    a = max(0.0, 1.0 - mu.real)
    b = max(0.0, -(2.0 * nu.real + 1.0))
    c = contours.segment(0.0, x, b or None, a or None)

    def g(pts):
        t = pts.t
        d = -pts.offset(x)
        return np.exp((nu + 1) * np.log(t) + (mu - 1) * (np.log(d) + np.log(x + t))) * _bessel(BesselKind.J, nu, t)

    v, _ = contours.integrate(g, c, tol)
    return 2.0 ** (1 - mu) * rgamma(mu) * v


def sonine_frac(nu, mu, x, tol: float = QUAD_TOL) -> complex:
    """R_mu [t^{nu/2} J_nu(2 sqrt t)](x) = x^{(nu+mu)/2} J_{nu+mu}(2 sqrt x)."""
    nu = complex(nu)

    def f(t):
        return np.exp(0.5 * nu * np.log(t)) * _bessel(BesselKind.J, nu, 2.0 * np.sqrt(t))

    return riemann_integral(f, mu, x, tol, start_exponent=max(0.0, -nu.real) or None)


def sonine_first(nu, mu, x, tol: float = QUAD_TOL, check_tol: float = 1e-8) -> complex:
    """x^{nu+mu} J_{nu+mu}(x) from the trigonometric form, checked against the algebraic form."""
    nu, mu, x = complex(nu), complex(mu), complex(x)
    if not mu.real > 0:
        raise ValidityError("Sonine's integral needs Re mu > 0")
    if not nu.real > -1:
        raise ValidityError("Sonine's integral needs Re nu > -1")
    if not (x.real > 0 and x.imag == 0):
        raise ValidityError("Sonine's integral is evaluated for real x > 0")
    trig = x ** (nu + mu) * sonine_trig(nu, mu, x, tol)
    alg = sonine_alg(nu, mu, x, tol)
    rel = abs(trig - alg) / max(abs(trig), abs(alg), 1e-300)
    if rel > check_tol:
        raise QuadratureNonConvergence(f"trigonometric and algebraic forms differ by {rel:.2e}")
    return trig


__all__ = [
    "Route", "Form", "FracParams", "ShiftRequest", "ShiftResult", "ROUTE_KINDS",
    "riemann_integral", "weyl_integral", "weyl_raise", "weyl_lower", "riemann_lower", "shift",
    "riemann_z_form", "k_weyl_form", "sonine_first", "sonine_trig", "sonine_alg", "sonine_frac",
    "closed_form", "check_validity", "validity_violations", "choose_form",
]
