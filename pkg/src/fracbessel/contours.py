"""Paths in the complex plane and an adaptive quadrature engine for them.

A :class:`Contour` is an ordered list of segments (lines, circular arcs and
rays to infinity).  :func:`integrate` evaluates ``int_C f(t) dt`` with an
adaptive Gauss-Kronrod (7/15) rule on smooth pieces and a tanh-sinh rule on
pieces that touch an annotated endpoint singularity.

Integrands receive a :class:`PathPoints` object rather than a bare array so
they can ask for ``t - c`` without cancellation near segment endpoints and
for the logarithm of ``t - around`` with its argument continued along the
path (the multivalued factors in loop integrals are built from it).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .errors import GeometryError, QuadratureNonConvergence, TailError

EPS = np.finfo(float).eps
MAX_PANELS = 2**14
CONNECT_TOL = 1e-12

# Kronrod 15-point nodes (non-negative half) and weights; Gauss 7-point weights
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
GK_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
GK_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes
GAUSS_WEIGHTS[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])


# ---------------------------------------------------------------- geometry


@dataclass(frozen=True)
class Line:
    a: complex
    b: complex

    kind = "line"

    @property
    def start(self) -> complex:
        return self.a

    @property
    def end(self) -> complex:
        return self.b

    def reversed(self) -> "Line":
        return Line(self.b, self.a)


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    theta_start: float
    theta_end: float

    kind = "arc"

    def __post_init__(self):
        if not self.radius > 0:
            raise GeometryError("arc radius must be positive")

    @property
    def start(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.theta_start)

    @property
    def end(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.theta_end)

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.theta_end, self.theta_start)


@dataclass(frozen=True)
class Ray:
    """Half line a + s e^{i angle}, s >= 0; ``inbound`` rays are traversed from infinity to a."""

    a: complex
    angle: float
    truncation: float | None = None
    inbound: bool = False

    kind = "ray"

    def __post_init__(self):
        if self.truncation is not None and not self.truncation > 0:
            raise GeometryError("ray truncation must be positive")

    @property
    def direction(self) -> complex:
        return cmath.exp(1j * self.angle)

    @property
    def start(self) -> complex:
        return complex(math.inf, math.inf) if self.inbound else self.a

    @property
    def end(self) -> complex:
        return self.a if self.inbound else complex(math.inf, math.inf)

    def reversed(self) -> "Ray":
        return Ray(self.a, self.angle, self.truncation, not self.inbound)


PathSegment = Line | Arc | Ray


@dataclass(frozen=True)
class Singularity:
    """Algebraic endpoint singularity ~ |t - location|^{-exponent}."""

    location: complex
    exponent: float = 0.5

    def __post_init__(self):
        if self.exponent >= 1.0:
            raise GeometryError(f"endpoint exponent {self.exponent} >= 1 is not integrable")


@dataclass(frozen=True)
class Contour:
    """Connected piecewise path.

    ``around`` names a branch point whose logarithm is tracked along the path
    (see :attr:`PathPoints.log_around`); ``start_arg`` is the argument of
    ``start - around`` at the first point, or the direction of the first
    segment when it starts at ``around`` itself.
    """

    segments: tuple
    singularities: tuple = ()
    decay_rate: float | None = None
    decay_power: float = 1.0
    around: complex | None = None
    start_arg: float = 0.0

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "singularities", tuple(self.singularities))
        if not segs:
            raise GeometryError("a contour needs at least one segment")
        for s, t in zip(segs, segs[1:]):
            e, b = s.end, t.start
            if cmath.isinf(e) or cmath.isinf(b):
                raise GeometryError("rays to infinity may only start or end a contour")
            if abs(e - b) > CONNECT_TOL * max(1.0, abs(e)):
                raise GeometryError(f"segments not connected: {e} -> {b}")

    def reversed(self) -> "Contour":
        args = segment_start_args(self)
        end_arg = args[-1][1]
        return replace(
            self,
            segments=tuple(s.reversed() for s in reversed(self.segments)),
            start_arg=end_arg,
        )


# ------------------------------------------------------------ path points


class PathPoints:
    """Quadrature nodes on one segment.

    ``t`` holds the points; :meth:`offset` returns ``t - c`` computed from the
    parametrisation so that it keeps full relative accuracy near the segment
    ends; :attr:`log_around` is ``log(t - around)`` with a continuous argument.
    """

    def __init__(self, seg, p: np.ndarray, pm: np.ndarray | None, arg0: float, around):
        self.segment = seg
        self.p = p
        self.pm = pm
        self._arg0 = arg0
        self._around = around
        if seg.kind == "line":
            d = seg.b - seg.a
            self.t = np.where(p <= 0.5, seg.a + d * p, seg.b - d * pm)
        elif seg.kind == "arc":
            self.t = seg.center + seg.radius * np.exp(1j * p)
        else:
            self.t = seg.a + seg.direction * p
        self._log = None

    def __len__(self) -> int:
        return self.t.shape[0]

    def offset(self, c) -> np.ndarray:
        c = complex(c)
        seg = self.segment
        if seg.kind == "line":
            d = seg.b - seg.a
            if c == seg.b:
                return -d * self.pm
            if c == seg.a:
                return d * self.p
            return np.where(self.p <= 0.5, (seg.a - c) + d * self.p, (seg.b - c) - d * self.pm)
        if seg.kind == "arc":
            return (seg.center - c) + seg.radius * np.exp(1j * self.p)
        return (seg.a - c) + seg.direction * self.p

    @property
    def log_around(self) -> np.ndarray:
        if self._log is None:
            if self._around is None:
                raise GeometryError("contour has no tracked branch point")
            self._log = _tracked_log(self.segment, self, self._around, self._arg0)
        return self._log


def _tracked_log(seg, pts: PathPoints, around: complex, arg0: float) -> np.ndarray:
    w = pts.offset(around)
    mod = np.abs(w)
    start = seg.a if seg.kind == "ray" else seg.start
    if seg.kind == "arc" and seg.center == around:
        arg = arg0 + (pts.p - seg.theta_start)
    elif abs(start - around) == 0.0:
        arg = np.full(w.shape, arg0)
    else:
        arg = arg0 + np.angle(w / (start - around))
    return np.log(mod) + 1j * arg


def _segment_end_arg(seg, around: complex, arg0: float) -> float:
    if seg.kind == "arc" and seg.center == around:
        return arg0 + seg.theta_end - seg.theta_start
    if seg.kind == "ray":
        if seg.inbound:
            # from infinity along the ray back to a; the angle seen from around at
            # infinity is the ray direction, arg0 refers to that
            if seg.a == around:
                return arg0
            return arg0 + cmath.phase((seg.a - around) * cmath.exp(-1j * seg.angle))
        return arg0
    start, end = seg.start, seg.end
    if start == around or end == around:
        return arg0
    return arg0 + cmath.phase((end - around) / (start - around))


def segment_start_args(c: Contour) -> list[tuple[float, float]]:
    """(argument at start, argument at end) of ``t - around`` for each segment."""
    out = []
    arg = c.start_arg
    around = c.around if c.around is not None else 0j
    for seg in c.segments:
        end = _segment_end_arg(seg, around, arg)
        out.append((arg, end))
        arg = end
    return out


# -------------------------------------------------------------- builders


def loop_contour(
    endpoint,
    around=0.0,
    loop_radius: float | None = None,
    ray_angle: float | None = None,
    truncation: float | None = None,
    *,
    decay_rate: float | None = None,
    decay_power: float = 1.0,
    endpoint_exponent: float | None = None,
) -> Contour:
    """The loop (endpoint, around+, endpoint).

    In on the edge where ``t - around`` has argument equal to the approach
    direction, once round ``around`` anticlockwise, and back out with that
    argument increased by 2 pi.  ``endpoint`` may be ``inf`` (then the legs are
    rays at ``ray_angle``, default 0).
    """
    around = complex(around)
    infinite = endpoint is None or (isinstance(endpoint, str) and endpoint.lower() in ("inf", "infinity"))
    if not infinite:
        endpoint = complex(endpoint)
        infinite = cmath.isinf(endpoint)
    if infinite:
        phi = 0.0 if ray_angle is None else float(ray_angle)
        r = 0.1 if loop_radius is None else float(loop_radius)
        if not r > 0:
            raise GeometryError("loop radius must be positive")
        p = around + r * cmath.exp(1j * phi)
        segs = (
            Ray(p, phi, truncation, inbound=True),
            Arc(around, r, phi, phi + 2 * math.pi),
            Ray(p, phi, truncation, inbound=False),
        )
        return Contour(segs, (), decay_rate, decay_power, around, phi)
    dist = abs(endpoint - around)
    if dist == 0:
        raise GeometryError("loop endpoint coincides with the encircled point")
    r = min(0.1, dist / 10.0) if loop_radius is None else float(loop_radius)
    if not 0 < r < dist:
        raise GeometryError(f"loop radius {r} must lie in (0, {dist})")
    phi = cmath.phase(endpoint - around) if ray_angle is None else float(ray_angle)
    p = around + r * cmath.exp(1j * phi)
    segs = (Line(endpoint, p), Arc(around, r, phi, phi + 2 * math.pi), Line(p, endpoint))
    sing = () if endpoint_exponent is None else (Singularity(endpoint, endpoint_exponent),)
    return Contour(segs, sing, decay_rate, decay_power, around, phi)


def segment(a, b, start_exponent: float | None = None, end_exponent: float | None = None,
            around=None, start_arg: float = 0.0) -> Contour:
    """Straight path a -> b with optional algebraic singularities at its ends."""
    a, b = complex(a), complex(b)
    sing = []
    if start_exponent is not None:
        sing.append(Singularity(a, start_exponent))
    if end_exponent is not None:
        sing.append(Singularity(b, end_exponent))
    return Contour((Line(a, b),), tuple(sing), None, 1.0, around, start_arg)


def ray(a, angle: float = 0.0, *, start_exponent: float | None = None, decay_rate: float | None = None,
        decay_power: float = 1.0, truncation: float | None = None, around=None) -> Contour:
    """Ray from a to infinity at ``angle``."""
    a = complex(a)
    sing = () if start_exponent is None else (Singularity(a, start_exponent),)
    return Contour((Ray(a, angle, truncation),), sing, decay_rate, decay_power, around, angle)


# ------------------------------------------------------------- quadrature


@dataclass
class _Panels:
    lo: np.ndarray
    hi: np.ndarray
    val: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    err: np.ndarray = field(default_factory=lambda: np.zeros(0))
    resabs: np.ndarray = field(default_factory=lambda: np.zeros(0))


def _gk_eval(g, lo: np.ndarray, hi: np.ndarray):
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = mid[:, None] + half[:, None] * GK_NODES[None, :]
    fx = np.asarray(g(x.ravel()), dtype=complex).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        bad = x[~np.isfinite(fx)].ravel()[0]
        raise QuadratureNonConvergence(f"integrand is not finite at parameter {bad}")
    k = half * (fx @ GK_WEIGHTS)
    gs = half * (fx @ GAUSS_WEIGHTS)
    resabs = np.abs(half) * (np.abs(fx) @ GK_WEIGHTS)
    mean = k / np.where(half == 0, 1, 2 * half)
    resasc = np.abs(half) * (np.abs(fx - mean[:, None]) @ GK_WEIGHTS)
    diff = np.abs(k - gs)
    with np.errstate(divide="ignore", invalid="ignore"):
        err = np.where(resasc > 0, resasc * np.minimum(1.0, (200.0 * diff / resasc) ** 1.5), diff)
    floor = 50.0 * EPS * resabs
    err = np.maximum(err, floor)
    return k, err, resabs


def gauss_kronrod(g: Callable, breaks: Sequence[float], tol: float, abs_tol: float = 0.0,
                  max_panels: int = MAX_PANELS) -> tuple[complex, float]:
    """Adaptive G7/K15 on the real parameter interval given by ``breaks``."""
    b = np.asarray(breaks, dtype=float)
    lo, hi = b[:-1].copy(), b[1:].copy()
    val, err, rabs = _gk_eval(g, lo, hi)
    while True:
        total = val.sum()
        errsum = err.sum()
        # per-panel estimates never drop below 50 eps resabs; allow for that floor
        target = max(tol * abs(total), abs_tol, 100.0 * EPS * rabs.sum())
        if errsum <= target:
            return complex(total), float(errsum)
        if len(lo) >= max_panels:
            raise QuadratureNonConvergence(
                f"subdivision limit of {max_panels} panels reached (error {errsum:.3e}, target {target:.3e})",
                complex(total), float(errsum))
        order = np.argsort(err)[::-1]
        csum = np.cumsum(err[order])
        # split the worst panels carrying the excess error
        nsplit = int(np.searchsorted(csum, errsum - 0.5 * target)) + 1
        nsplit = max(1, min(nsplit, len(order), max_panels - len(lo)))
        sel = np.zeros(len(lo), bool)
        sel[order[:nsplit]] = True
        # keep panels whose error is already negligible
        keep = ~sel
        m = 0.5 * (lo[sel] + hi[sel])
        nlo = np.concatenate([lo[sel], m])
        nhi = np.concatenate([m, hi[sel]])
        if np.any(nhi - nlo <= 4 * EPS * np.maximum(np.abs(nlo), np.abs(nhi))):
            raise QuadratureNonConvergence("panels shrank to machine precision", complex(total), float(errsum))
        v2, e2, r2 = _gk_eval(g, nlo, nhi)
        lo = np.concatenate([lo[keep], nlo])
        hi = np.concatenate([hi[keep], nhi])
        val = np.concatenate([val[keep], v2])
        err = np.concatenate([err[keep], e2])
        rabs = np.concatenate([rabs[keep], r2])


def _de_nodes(level: int, tau_max: float):
    h = 2.0 ** -level
    if level == 0:
        k = np.arange(-int(tau_max), int(tau_max) + 1, dtype=float)
    else:
        n = int(tau_max / h)
        k = np.arange(-n, n + 1)
        k = k[k % 2 != 0].astype(float)
    tau = k * h
    if level == 0:
        tau = k
    s = math.pi * np.sinh(tau)
    u = 1.0 / (1.0 + np.exp(-s))
    um = 1.0 / (1.0 + np.exp(s))
    w = math.pi * np.cosh(tau) * u * um
    return u, um, w


def tanh_sinh(g2: Callable, tol: float, abs_tol: float = 0.0, tau_max: float = 5.0,
              max_level: int = 10) -> tuple[complex, float]:
    """Tanh-sinh rule on [0, 1]; ``g2(u, 1-u)`` receives the node and its complement."""
    total = 0j
    prev = None
    rabs = 0.0
    for level in range(max_level + 1):
        u, um, w = _de_nodes(level, tau_max)
        keep = w > 0
        u, um, w = u[keep], um[keep], w[keep]
        fx = np.asarray(g2(u, um), dtype=complex)
        good = np.isfinite(fx)
        if not good.all():
            # nodes closer to the endpoint than the integrand can be evaluated at
            if np.any(~good & (np.minimum(u, um) > 1e-30)):
                raise QuadratureNonConvergence("integrand is not finite inside the interval")
            fx = np.where(good, fx, 0)
        h = 1.0 if level == 0 else 2.0 ** -level
        s = (w * fx).sum()
        rabs = 0.5 * rabs + h * (w * np.abs(fx)).sum() if level else (w * np.abs(fx)).sum()
        total = s if level == 0 else 0.5 * total + h * s
        if prev is not None:
            err = abs(total - prev)
            target = max(tol * abs(total), abs_tol, 50.0 * EPS * rabs)
            if err <= target and level >= 3:
                return complex(total), float(max(err * err / max(target, 1e-300), 10 * EPS * rabs))
        prev = total
    raise QuadratureNonConvergence(
        f"tanh-sinh did not converge after {max_level} levels", complex(total), float(abs(total - prev)))


def _seg_has_sing(c: Contour, point: complex) -> Singularity | None:
    for s in c.singularities:
        if abs(s.location - point) <= CONNECT_TOL * max(1.0, abs(point)):
            return s
    return None


def _tau_max(sing: Singularity | None) -> float:
    if sing is not None and sing.exponent > 0.85:
        return 6.0
    return 5.0


def _integrate_finite(f, c: Contour, seg, arg0: float, tol: float, abs_tol: float):
    around = c.around
    if seg.kind == "line":
        s0 = _seg_has_sing(c, seg.a)
        s1 = _seg_has_sing(c, seg.b)
        d = seg.b - seg.a
        if s0 is None and s1 is None:
            def g(u):
                return f(PathPoints(seg, u, 1.0 - u, arg0, around)) * d
            return gauss_kronrod(g, np.linspace(0.0, 1.0, 5), tol, abs_tol)

        def g2(u, um):
            return f(PathPoints(seg, u, um, arg0, around)) * d
        tm = max(_tau_max(s0), _tau_max(s1))
        return tanh_sinh(g2, tol, abs_tol, tm)
    # arc
    span = seg.theta_end - seg.theta_start
    npan = max(4, int(math.ceil(abs(span) / (math.pi / 4))))

    def ga(theta):
        return f(PathPoints(seg, theta, None, arg0, around)) * (1j * seg.radius * np.exp(1j * theta))
    return gauss_kronrod(ga, np.linspace(seg.theta_start, seg.theta_end, npan + 1), tol, abs_tol)


def _ray_truncation(c: Contour, seg: Ray, tol: float) -> float:
    if seg.truncation is not None:
        return seg.truncation
    if c.decay_rate is None or not c.decay_rate > 0:
        raise TailError("infinite ray without a decay rate or explicit truncation")
    return ((math.log(1.0 / tol) + 12.0) / c.decay_rate) ** (1.0 / c.decay_power)


def _integrate_ray(f, c: Contour, seg: Ray, arg0: float, tol: float, abs_tol: float):
    sign = -1.0 if seg.inbound else 1.0
    d = seg.direction
    sing = _seg_has_sing(c, seg.a)
    smax = _ray_truncation(c, seg, tol)
    out_arg = arg0 if not seg.inbound else _segment_end_arg(seg, c.around if c.around is not None else 0j, arg0)
    # log tracking on an inbound ray refers to its end point a
    oseg = Ray(seg.a, seg.angle, seg.truncation, False)

    def g(s):
        return f(PathPoints(oseg, s, None, out_arg, c.around)) * d

    total, err = 0j, 0.0
    s_lo = 0.0
    if sing is not None:
        s1 = min(smax, max(1e-3, 0.5 * min(1.0, smax)))

        def g2(u, um):
            return g(s1 * u) * s1
        v, e = tanh_sinh(g2, tol, abs_tol, _tau_max(sing))
        total += v
        err += e
        s_lo = s1
    # geometric initial panels
    edges = [s_lo]
    step = max(min(1.0, smax / 16), 1e-3)
    while edges[-1] + step < smax:
        edges.append(edges[-1] + step)
        step *= 2.0
    edges.append(smax)
    v, e = gauss_kronrod(g, edges, tol, abs_tol)
    total += v
    err += e
    if seg.truncation is None:
        # extend while the tail estimate is not negligible
        for _ in range(8):
            probe = g(np.array([smax, 1.1 * smax, 1.25 * smax]))
            p = c.decay_power
            tail = np.abs(probe).max() * smax / max(p * c.decay_rate * smax**p, 1.0)
            if tail <= 0.1 * max(tol * abs(total), abs_tol):
                break
            nmax = 2.0 * smax
            v, e = gauss_kronrod(g, np.linspace(smax, nmax, 9), tol, abs_tol)
            total += v
            err += e
            smax = nmax
        else:
            raise TailError("tail of the ray did not become negligible")
    return sign * total, err


def integrate(f: Callable[[PathPoints], np.ndarray], c: Contour, tol: float = 1e-11,
              abs_tol: float = 0.0) -> tuple[complex, float]:
    """Integral of ``f`` along ``c``; returns ``(value, absolute error estimate)``.

    ``tol`` is relative.  Segments are integrated independently; when they
    cancel the pass is repeated once with a tighter per-segment tolerance.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    args = segment_start_args(c)
    seg_tol = tol
    for _ in range(3):
        vals, errs = [], []
        for seg, (a0, _a1) in zip(c.segments, args):
            if seg.kind == "ray":
                v, e = _integrate_ray(f, c, seg, a0, seg_tol, abs_tol)
            else:
                v, e = _integrate_finite(f, c, seg, a0, seg_tol, abs_tol)
            vals.append(v)
            errs.append(e)
        total = complex(sum(vals))
        err = float(sum(errs))
        want = max(tol * abs(total), abs_tol)
        if err <= want or seg_tol <= 1e-15:
            return total, err
        seg_tol = max(1e-15, seg_tol * max(want, 1e-300) / err * 0.5)
    return total, err
