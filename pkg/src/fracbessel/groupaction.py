"""Finite E(2) translations acting on t^nu Z_nu(x), integer stepping, and the Lommel expansions.

Writing w = x t and wb = x / t, the function t^nu Z_nu(x) is
F(w, wb) = w^nu (w wb)^{-nu/2} Z_nu(sqrt(w wb)).  The group element
e^{-u P+} shifts wb by 2u and e^{-u P-} shifts w by -2u, which gives the
closed forms in :func:`group_shift`.

Stepping signs: P+ Z_nu = eps Z_{nu+1}, P- Z_nu = eps Z_{nu-1} with eps = +1
except P+ on I (eps = -1) and P- on K (eps = -1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from enum import Enum

from .besselcore import BesselKind, BesselPoint, bessel, bessel_dz
from .complexmath import PRINCIPAL, ComplexValue, cpow, rgamma
from .errors import DomainError, RadiusError

SINGULAR_AT_ZERO = {BesselKind.Y, BesselKind.H1, BesselKind.H2, BesselKind.K}


class Direction(str, Enum):
    PLUS = "plus"
    MINUS = "minus"

    @classmethod
    def parse(cls, value) -> "Direction":
        if isinstance(value, cls):
            return value
        v = str(value).lower()
        if v in ("+", "up", "raise"):
            return cls.PLUS
        if v in ("-", "down", "lower"):
            return cls.MINUS
        return cls(v)


@dataclass(frozen=True)
class GroupShift:
    kind: BesselKind
    nu: complex
    x: ComplexValue
    t: ComplexValue
    u: complex
    direction: Direction

    def __post_init__(self):
        object.__setattr__(self, "kind", BesselKind.parse(self.kind))
        object.__setattr__(self, "nu", complex(self.nu))
        object.__setattr__(self, "x", ComplexValue.of(self.x))
        object.__setattr__(self, "t", ComplexValue.of(self.t))
        object.__setattr__(self, "u", complex(self.u))
        object.__setattr__(self, "direction", Direction.parse(self.direction))
        if self.x.modulus == 0 or self.t.modulus == 0:
            raise DomainError("x and t must be nonzero")


def step_sign(kind, direction) -> int:
    kind = BesselKind.parse(kind)
    direction = Direction.parse(direction)
    if kind == BesselKind.I and direction == Direction.PLUS:
        return -1
    if kind == BesselKind.K and direction == Direction.MINUS:
        return -1
    return 1


def radius(g: GroupShift) -> float:
    """Radius in u of the disc where the Lommel expansion converges."""
    x, t = g.x.modulus, g.t.modulus
    return x / (2 * t) if g.direction == Direction.PLUS else x * t / 2


def _ratio(g: GroupShift) -> complex:
    """The factor r with shifted argument x^2 r: 1 + 2ut/x (plus) or 1 - 2u/(xt) (minus)."""
    x, t = complex(g.x), complex(g.t)
    if g.direction == Direction.PLUS:
        return 1 + 2 * g.u * t / x
    return 1 - 2 * g.u / (x * t)


def _scaled(v: ComplexValue, factor: complex) -> ComplexValue:
    """v * factor with the effective argument of v carried along."""
    return ComplexValue.polar(v.modulus * abs(factor), v.arg + cmath.phase(factor))


def group_shift(g: GroupShift) -> complex:
    """e^{-u P+-} t^nu Z_nu(x) in closed form.

    plus:  t^nu x^nu (x^2 + 2uxt)^{-nu/2} Z_nu(sqrt(x^2 + 2uxt))
    minus: (t/x)^nu (x^2 - 2ux/t)^{nu/2} Z_nu(sqrt(x^2 - 2ux/t))
    The powers of x^2 r are taken as x^{..} r^{..} with r -> 1 as u -> 0.
    """
    r = _ratio(g)
    if r == 0:
        if g.kind in SINGULAR_AT_ZERO:
            raise DomainError("shifted argument is at the singular point 0")
        return _limit_at_zero(g)
    sq = cmath.sqrt(r)
    arg = _scaled(g.x, sq)
    z = bessel(BesselPoint(g.kind, g.nu, arg))
    tn = complex(cpow(g.t, g.nu, PRINCIPAL))
    e = -g.nu / 2 if g.direction == Direction.PLUS else g.nu / 2
    return tn * cmath.exp(e * cmath.log(r)) * z


def _limit_at_zero(g: GroupShift) -> complex:
    """J, I at shifted argument 0, from the leading series term s^{nu/2} / (2^nu Gamma(nu+1))."""
    tn = complex(cpow(g.t, g.nu, PRINCIPAL))
    if g.direction == Direction.PLUS:
        xn = complex(cpow(g.x, g.nu, PRINCIPAL))
        return tn * xn * 2.0 ** (-g.nu) * rgamma(g.nu + 1)
    if g.nu == 0:
        return 1.0 + 0j
    if g.nu.real > 0:
        return 0j
    raise DomainError("shifted argument is 0 and the power s^{nu/2} diverges")


def compose(g: GroupShift, u2) -> GroupShift:
    """The shift representing e^{-u2 P} applied after ``g`` (same direction).

    group_shift(compose(g, u2)) equals the second translation acting on the
    function produced by ``g``; by the group law it equals group_shift with
    u = g.u + u2.
    """
    sq = cmath.sqrt(_ratio(g))
    x2 = _scaled(g.x, sq)
    if g.direction == Direction.PLUS:
        t2 = _scaled(g.t, 1 / sq)  # w = x t kept fixed
    else:
        t2 = _scaled(g.t, sq)  # wb = x / t kept fixed
    return replace(g, x=x2, t=t2, u=complex(u2))


def lommel_series(g: GroupShift, n_terms: int) -> tuple[complex, float]:
    """Partial sum sum_{n<N} ((-eps u)^n / n!) t^{nu +- n} Z_{nu +- n}(x) and |last term|."""
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    rad = radius(g)
    if abs(g.u) >= rad:
        raise RadiusError(f"|u| = {abs(g.u):.6g} is outside the convergence radius {rad:.6g}")
    sgn = 1 if g.direction == Direction.PLUS else -1
    eps = step_sign(g.kind, g.direction)
    tn = complex(cpow(g.t, g.nu, PRINCIPAL))
    t = complex(g.t)
    total = 0j
    coef = 1.0 + 0j  # (-eps u)^n / n!
    tpow = 1.0 + 0j  # t^{+-n}
    term = 0j
    for n in range(n_terms):
        z = bessel(BesselPoint(g.kind, g.nu + sgn * n, g.x))
        term = coef * tn * tpow * z
        total += term
        coef *= -eps * g.u / (n + 1)
        tpow *= t if sgn > 0 else 1 / t
    return total, abs(term)


def step(kind, nu, x, direction) -> complex:
    """(-+ d/dx + nu/x) Z_nu(x), which equals step_sign * Z_{nu +- 1}(x)."""
    kind = BesselKind.parse(kind)
    direction = Direction.parse(direction)
    nu = complex(nu)
    xv = ComplexValue.of(x)
    if xv.modulus == 0:
        raise DomainError("stepping needs x != 0")
    p = BesselPoint(kind, nu, xv)
    z, dz = bessel(p), bessel_dz(p)
    s = -1.0 if direction == Direction.PLUS else 1.0
    return s * dz + nu / complex(xv) * z


def step_compose(kind, nu, x, h: float | None = None) -> complex:
    """P+ applied to the output of P- on Z_nu, differentiating the P- output numerically.

    The P- output is eps_- Z_{nu-1}; P+ then acts with order nu - 1.  Five-point
    central differences with step h (default 1e-3 min(1, |x|)).
    """
    kind = BesselKind.parse(kind)
    nu = complex(nu)
    x = complex(x)
    if x == 0:
        raise DomainError("stepping needs x != 0")
    h = 1e-3 * min(1.0, abs(x)) if h is None else h
    f = lambda y: step(kind, nu, y, Direction.MINUS)  # noqa: E731
    d = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)
    return -d + (nu - 1) / x * f(x)


def translate_taylor(g: GroupShift, n: int, h: float | None = None, method: str = "fd") -> complex:
    """n-th u-derivative of group_shift at u = 0.

    method "fd": central differences for n = 1, 2.  n = 1 uses the three-point
    rule with h = 1e-6 max(1, |u|).  For n = 2 that step leaves roundoff near
    eps/h^2, so the five-point rule is used with a step of 1e-3 times the
    convergence radius (capped at 1e-3).

    method "cauchy": the Cauchy integral n!/(2 pi i) of f(u) u^{-n-1} round the
    circle |u| = radius/2 (or h) by the 64-point trapezoid rule, any n >= 0;
    the error falls like 2^{-64}.
    """
    f = lambda u: group_shift(replace(g, u=u))  # noqa: E731
    if method == "cauchy":
        rho = 0.5 * radius(g) if h is None else h
        m = 64
        acc = 0j
        for k in range(m):
            w = cmath.exp(2j * cmath.pi * k / m)
            acc += f(rho * w) * w ** (-n)
        return acc / m * math.factorial(n) / rho**n
    if method != "fd":
        raise ValueError(f"unknown method {method!r}")
    if n == 1:
        h = 1e-6 * max(1.0, abs(g.u)) if h is None else h
        return (f(h) - f(-h)) / (2 * h)
    if n == 2:
        h = 1e-3 * min(1.0, radius(g)) if h is None else h
        return (-f(2 * h) + 16 * f(h) - 30 * f(0.0) + 16 * f(-h) - f(-2 * h)) / (12 * h * h)
    raise ValueError("finite differences support only n = 1, 2")


def stepped(kind, nu, x, t, n: int, direction) -> complex:
    """P^n t^nu Z_nu(x) = eps^n t^{nu +- n} Z_{nu +- n}(x)."""
    kind = BesselKind.parse(kind)
    direction = Direction.parse(direction)
    sgn = 1 if direction == Direction.PLUS else -1
    t = ComplexValue.of(t)
    tn = complex(cpow(t, complex(nu) + sgn * n, PRINCIPAL))
    return step_sign(kind, direction) ** n * tn * bessel(BesselPoint(kind, complex(nu) + sgn * n, x))


__all__ = [
    "Direction", "GroupShift", "group_shift", "compose", "lommel_series", "step", "step_sign",
    "step_compose", "translate_taylor", "stepped", "radius",
]
