"""Verification suite: every identity evaluated over parameter grids, reported as json or csv.

Each identity maps a parameter point to one or more (value, reference) pairs;
the relative error of a pair is |a - b| / max(|a|, |b|, 1e-300).  Points that
violate a validity predicate are counted as skips.  Quadrature or series
failures count as infinite error.
"""

from __future__ import annotations

import cmath
import csv
import io
import itertools
import json
import math
import zlib
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Sequence

import numpy as np

from . import fracops, groupaction, intreps
from .besselcore import BesselKind, BesselPoint, bessel, bessel_dz, evaluate
from .errors import (
    ConfigError, ConvergenceError, DomainError, GeometryError, IoError, PoleError,
    QuadratureNonConvergence, RadiusError, TailError, ValidityError,
)
from .fracops import Form, Route, ShiftRequest

SKIP_ERRORS = (ValidityError, PoleError, RadiusError, DomainError)
NUMERIC_ERRORS = (QuadratureNonConvergence, TailError, ConvergenceError, GeometryError)

NU_C = 0.5 + 0.25j
Z_C = 2 * cmath.exp(1j * math.pi / 3)
LOMMEL_TERMS = 40
CSV_COLUMNS = ("identity_id", "paper_anchor", "grid_size", "max_rel_err", "mean_rel_err",
               "n_validity_skips", "status")


@dataclass(frozen=True)
class Grid:
    """Parameter lists for one identity family; points are the product plus ``spots``.

    ``u`` (fractions of the convergence radius) and ``t`` are used by the
    group-action identities only.  ``spots`` holds extra (nu, mu, x) triples.
    """

    nu: tuple = ()
    mu: tuple = ()
    x: tuple = ()
    u: tuple = ()
    t: tuple = ()
    spots: tuple = ()


_DEFAULT_SPOTS = ((NU_C, -0.5, 2.0), (NU_C, 0.25, 2.0), (0.5, -0.5, Z_C), (0.5, 0.25, Z_C))

DEFAULT_GRIDS: Mapping[str, Grid] = {
    "default": Grid(
        nu=(0.0, 1 / 3, 0.5, 1.0, 2.5),
        mu=(-0.75, -0.5, -0.25, 0.25, 0.5, 0.75, 1.0),
        x=(0.5, 1.0, 2.0, 5.0, 10.0, 20.0),
        spots=_DEFAULT_SPOTS,
    ),
    "sonine_first": Grid(nu=(0.0, 0.5, 1.0), mu=(0.5,), x=(2.0,)),
    "composition": Grid(nu=(0.0, 1 / 3, 1.0), mu=(-0.5, -0.25, 0.25, 0.75), x=(1.0, 5.0)),
    "nested": Grid(nu=(0.0, 1.0), mu=(0.25, 0.75), x=(0.5, 2.0)),
    "group": Grid(
        nu=(0.0, 1 / 3, 0.5, 1.0),
        x=(0.5, 1.0, 2.0, 5.0, 10.0, 20.0),
        u=(-0.5, 0.25, 0.5j),
        t=(1.0, 0.8 * cmath.exp(0.3j)),
    ),
    # at 40 terms and |u| = radius/2 the tail is below 1e-10 only for x up to about 4
    # (K, nu = 1: 4e-11 at x = 4, 1.1e-10 at x = 5); for K near x = 20 the terms exceed
    # the sum by ~1e12 and cancellation dominates at any length
    "lommel": Grid(
        nu=(0.0, 1 / 3, 0.5, 1.0),
        x=(0.5, 1.0, 2.0, 4.0),
        u=(-0.5, 0.25, 0.5, 0.5j),
        t=(1.0, 0.8 * cmath.exp(0.3j)),
    ),
}


@dataclass(frozen=True)
class SuiteConfig:
    grids: Mapping[str, Grid] = field(default_factory=lambda: dict(DEFAULT_GRIDS))
    tol: float = 1e-8
    quad_tol: float = 1e-11
    identities: frozenset | None = None  # None selects every identity
    seed: int = 0
    output_path: str | None = None
    output_format: str = "json"
    n_random: int = 16

    def grid(self, family: str) -> Grid:
        return self.grids.get(family, self.grids.get("default", DEFAULT_GRIDS["default"]))


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    paper_anchor: str
    grid_size: int
    max_rel_err: float
    mean_rel_err: float
    n_validity_skips: int
    status: str
    worst_point: tuple = ()


Point = dict
Pairs = list  # of (a, b) or (a, b, scale)


@dataclass(frozen=True)
class Identity:
    id: str
    anchor: str
    family: str
    check: Callable[[Point, float], Pairs]
    points: Callable[[Grid], list]
    sample: Callable[[np.random.Generator], Point] | None = None


def rel_err(a: complex, b: complex, scale: float = 0.0) -> float:
    return abs(a - b) / max(abs(a), abs(b), scale, 1e-300)


# ------------------------------------------------------------ point sets


def _triples(g: Grid) -> list:
    return list(itertools.product(g.nu, g.mu, g.x)) + list(g.spots)


def _with_kinds(kinds: Sequence[str], g: Grid) -> list:
    return [dict(kind=k, nu=nu, mu=mu, x=x) for k in kinds for nu, mu, x in _triples(g)]


def _order_x(kinds: Sequence[str], g: Grid) -> list:
    """(kind, order, x): order from the mu list, plus the mu/x parts of the spots."""
    pairs = list(itertools.product(g.mu, g.x)) + [(mu, x) for _, mu, x in g.spots]
    return [dict(kind=k, mu=mu, x=x) for k in kinds for mu, x in pairs]


def _nu_x(kinds: Sequence[str], g: Grid) -> list:
    pairs = list(itertools.product(g.nu, g.x)) + [(nu, x) for nu, _, x in g.spots]
    seen, out = set(), []
    for k in kinds:
        for nu, x in pairs:
            if (k, nu, x) not in seen:
                seen.add((k, nu, x))
                out.append(dict(kind=k, nu=nu, x=x))
    return out


def _mu_pairs(kinds: Sequence[str], g: Grid) -> list:
    pairs = list(itertools.combinations(g.mu, 2))
    return [dict(kind=k, nu=nu, mu=m1, mu2=m2, x=x)
            for k in kinds for nu in g.nu for m1, m2 in pairs for x in g.x]


def _mu_self_pairs(g: Grid) -> list:
    pairs = list(itertools.combinations_with_replacement(g.mu, 2))
    return [dict(nu=nu, mu=m1, mu2=m2, x=x) for nu in g.nu for m1, m2 in pairs for x in g.x]


def _group_points(kinds: Sequence[str], directions: Sequence[str], g: Grid) -> list:
    return [dict(kind=k, direction=d, nu=nu, x=x, t=t, u=u)
            for k in kinds for d in directions for nu in g.nu for x in g.x for t in g.t for u in g.u]


# ------------------------------------------------------------- samplers


def _sampler(kinds: Sequence[str], nu=(0.0, 3.0), mu=(-0.9, 1.2), x=(0.3, 20.0), extra=None):
    def draw(rng: np.random.Generator) -> Point:
        p = dict(kind=str(rng.choice(list(kinds))), nu=float(rng.uniform(*nu)),
                 mu=float(rng.uniform(*mu)), x=float(rng.uniform(*x)))
        if extra:
            p.update(extra(rng))
        return p
    return draw


def _group_sampler(kinds: Sequence[str], directions: Sequence[str], x_max: float = 20.0):
    def draw(rng: np.random.Generator) -> Point:
        return dict(kind=str(rng.choice(list(kinds))), direction=str(rng.choice(list(directions))),
                    nu=float(rng.uniform(0.0, 1.0)), x=float(rng.uniform(0.3, x_max)),
                    t=cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5)),
                    u=cmath.rect(rng.uniform(0.0, 0.5), rng.uniform(-math.pi, math.pi)))
    return draw


# --------------------------------------------------------------- checks


def _sonine_first(p: Point, qt: float) -> Pairs:
    nu, mu, x = p["nu"], p["mu"], p["x"]
    if not (mu > 0 and nu > -1):
        raise ValidityError("Sonine's integral needs Re mu > 0, Re nu > -1")
    ref = x ** (nu + mu) * complex(evaluate("J", nu + mu, x))
    trig = x ** (nu + mu) * fracops.sonine_trig(nu, mu, x, qt)
    return [(trig, ref), (fracops.sonine_alg(nu, mu, x, qt), ref)]


def _sonine_forms(p: Point, qt: float) -> Pairs:
    nu, mu, x = complex(p["nu"]), complex(p["mu"]), complex(p["x"])
    if not (mu.real > 0 and nu.real > -1):
        raise ValidityError("Sonine's integral needs Re mu > 0, Re nu > -1")
    if not (x.imag == 0 and x.real > 0):
        raise ValidityError("Sonine forms are checked for real x > 0")
    lam = nu + mu
    jv = complex(evaluate("J", lam, x))
    y = x * x / 4
    return [
        (fracops.sonine_trig(nu, mu, x, qt), jv),
        (fracops.sonine_alg(nu, mu, x, qt), x**lam * jv),
        (fracops.sonine_frac(nu, mu, y, qt), y ** (lam / 2) * jv),
    ]


def _forms_for(route: Route, kind: str, mu: complex) -> list:
    # inside the auto-selection margin only the loop form is numerically usable
    if mu.real <= fracops.COLLAPSE_MARGIN and not (route == Route.WEYL_LOWER and kind in ("J", "Y")):
        if mu.imag == 0 and mu.real == round(mu.real):
            return [Form.COLLAPSED]  # Gamma(mu + 1) pole: no loop form
        return [Form.LOOP, Form.COLLAPSED]
    return [None]


def _shift_check(route: Route, kind: str):
    def check(p: Point, qt: float) -> Pairs:
        nu, mu, z = complex(p["nu"]), complex(p["mu"]), complex(p["x"])
        out = []
        for form in _forms_for(route, kind, mu):
            req = ShiftRequest.make(route, kind, nu, mu, z, form, tol=qt)
            out.append((fracops.shift(req).value, fracops.closed_form(req)))
        real_z = z.imag == 0 and z.real > 0
        if route == Route.WEYL_RAISE and kind == "K" and mu.real < 0 and real_z:
            out.append((fracops.k_weyl_form(nu, mu, z.real, qt), out[0][1]))
        if route == Route.RIEMANN_LOWER and mu.real < 0 and real_z:
            lam = nu - mu
            ref = z ** (lam / 2) * complex(evaluate(kind, lam, cmath.sqrt(z)))
            out.append((fracops.riemann_z_form(kind, nu, mu, z, qt), ref))
        return out
    return check


def _sgn(route: Route) -> int:
    return 1 if route == Route.WEYL_RAISE else -1


def _shift_value(route, kind, nu, mu, z, qt) -> tuple[complex, complex]:
    req = ShiftRequest.make(route, kind, nu, mu, z, tol=qt)
    return fracops.shift(req).value, fracops.closed_form(req)


def _composition_check(route: Route):
    """mu1 then mu2 against a single mu1 + mu2, each step checked against its target."""
    def check(p: Point, qt: float) -> Pairs:
        kind, nu, m1, m2, z = p["kind"], complex(p["nu"]), complex(p["mu"]), complex(p["mu2"]), complex(p["x"])
        s = _sgn(route)
        first, first_ref = _shift_value(route, kind, nu, m1, z, qt)
        second, _ = _shift_value(route, kind, nu + s * m1, m2, z, qt)
        one, one_ref = _shift_value(route, kind, nu, m1 + m2, z, qt)
        return [(first, first_ref), (second, one), (one, one_ref)]
    return check


def _inverse_check(route: Route):
    """mu then -mu returns the input function."""
    def check(p: Point, qt: float) -> Pairs:
        kind, nu, mu, z = p["kind"], complex(p["nu"]), complex(p["mu"]), complex(p["x"])
        s = _sgn(route)
        fwd, fwd_ref = _shift_value(route, kind, nu, mu, z, qt)
        back, _ = _shift_value(route, kind, nu + s * mu, -mu, z, qt)
        orig = fracops.closed_form(ShiftRequest.make(route, kind, nu, 0.0, z))
        return [(fwd, fwd_ref), (back, orig)]
    return check


def _riemann_product(p: Point, qt: float) -> Pairs:
    """R_a R_b f = R_{a+b} f with f = t^{nu/2} J_nu(2 sqrt t), the inner integral done pointwise."""
    nu, a, b, x = complex(p["nu"]), complex(p["mu"]), complex(p["mu2"]), float(p["x"])
    if not (a.real > 0 and b.real > 0):
        raise ValidityError("Riemann integrals of positive order only")
    f = lambda t: np.exp(0.5 * nu * np.log(t)) * evaluate("J", nu, 2.0 * np.sqrt(t))  # noqa: E731
    start = max(0.0, -nu.real) or None

    def inner(ts):
        return np.array([fracops.riemann_integral(f, b, t, qt, start_exponent=start) for t in ts])

    nested = fracops.riemann_integral(inner, a, x, qt)
    direct = fracops.riemann_integral(f, a + b, x, qt, start_exponent=start)
    lam = nu + a + b
    ref = x ** (lam / 2) * complex(evaluate("J", lam, 2.0 * math.sqrt(x)))
    return [(nested, direct), (direct, ref)]


def _group(p: Point) -> groupaction.GroupShift:
    g = groupaction.GroupShift(p["kind"], p["nu"], p["x"], p["t"], 0.0, p["direction"])
    return replace(g, u=complex(p["u"]) * groupaction.radius(g))


def _lommel(p: Point, qt: float) -> Pairs:
    g = _group(p)
    s, _ = groupaction.lommel_series(g, LOMMEL_TERMS)
    return [(s, groupaction.group_shift(g))]


def _group_law(p: Point, qt: float) -> Pairs:
    g = _group(p)
    u2 = 0.3 * cmath.exp(0.7j) * groupaction.radius(g)
    two = groupaction.group_shift(groupaction.compose(g, u2))
    one = groupaction.group_shift(replace(g, u=g.u + u2))
    return [(two, one)]


def _taylor(p: Point, qt: float) -> Pairs:
    g = replace(_group(p), u=0j)
    out = []
    for n in (1, 2):
        d = groupaction.translate_taylor(g, n, method="cauchy")
        out.append((d, (-1) ** n * groupaction.stepped(g.kind, g.nu, g.x, g.t, n, g.direction)))
    return out


def _stepping(p: Point, qt: float) -> Pairs:
    kind, nu, x = p["kind"], complex(p["nu"]), complex(p["x"])
    out = []
    for d, s in (("plus", 1), ("minus", -1)):
        ref = groupaction.step_sign(kind, d) * bessel(BesselPoint(kind, nu + s, x))
        out.append((groupaction.step(kind, nu, x, d), ref))
    return out


def _step_compose(p: Point, qt: float) -> Pairs:
    kind, nu, x = p["kind"], complex(p["nu"]), complex(p["x"])
    sign = groupaction.step_sign(kind, "plus") * groupaction.step_sign(kind, "minus")
    return [(groupaction.step_compose(kind, nu, x), sign * bessel(BesselPoint(kind, nu, x)))]


def _represent(family: str, kind: str):
    def check(p: Point, qt: float) -> Pairs:
        mu, x = complex(p["mu"]), complex(p["x"])
        r = intreps.ReprRequest(kind, mu, x, family, tol=qt)
        return [(intreps.represent(r), complex(evaluate(kind, mu, x)))]
    return check


def _mehler_combination(p: Point, qt: float) -> Pairs:
    mu, x = complex(p["mu"]), complex(p["x"])
    v = {k: intreps.mehler_sonine(intreps.ReprRequest(k, mu, x, "mehler_sonine", tol=qt)) for k in ("H1", "H2")}
    # J with its tails on rays at +-pi/4, so the two sides share no contour
    j = intreps.mehler_sonine(intreps.ReprRequest("J", mu, x, "mehler_sonine", ray_angle=0.25 * math.pi, tol=qt))
    return [((v["H1"] + v["H2"]) / 2, j)]


_WRONSKIANS = (("J", "Y", lambda z: 2 / (math.pi * z)),
               ("I", "K", lambda z: -1 / z),
               ("H1", "H2", lambda z: -4j / (math.pi * z)))


def _wronskian(p: Point, qt: float) -> Pairs:
    nu, z = complex(p["nu"]), complex(p["x"])
    out = []
    for a, b, w in _WRONSKIANS:
        pa, pb = BesselPoint(a, nu, z), BesselPoint(b, nu, z)
        out.append((bessel(pa) * bessel_dz(pb) - bessel_dz(pa) * bessel(pb), w(z)))
    return out


def _reflection(p: Point, qt: float) -> Pairs:
    nu, z = complex(p["nu"]), complex(p["x"])
    v = {k: complex(evaluate(k, nu, z)) for k in ("J", "Y", "H1", "H2", "I", "K")}
    m = {k: complex(evaluate(k, -nu, z)) for k in v}
    c, s = cmath.cos(math.pi * nu), cmath.sin(math.pi * nu)
    return [
        (m["J"], c * v["J"] - s * v["Y"]),
        (m["Y"], s * v["J"] + c * v["Y"]),
        (m["H1"], cmath.exp(1j * math.pi * nu) * v["H1"]),
        (m["H2"], cmath.exp(-1j * math.pi * nu) * v["H2"]),
        (m["I"], v["I"] + 2 / math.pi * s * v["K"]),
        (m["K"], v["K"]),
    ]


def _second_derivative(kind: str, nu: complex, z: complex) -> complex:
    """Z'' from the Cauchy formula on a circle of radius |z|/4 (at most 1)."""
    m = 32
    rho = min(1.0, abs(z) / 4)
    w = np.exp(2j * np.pi * np.arange(m) / m)
    vals = evaluate(kind, nu, z + rho * w)
    return complex(np.mean(vals * w**-2)) * 2 / rho**2


def _ode(p: Point, qt: float) -> Pairs:
    kind, nu, z = p["kind"], complex(p["nu"]), complex(p["x"])
    pt = BesselPoint(kind, nu, z)
    zv, dz = bessel(pt), bessel_dz(pt)
    d2 = _second_derivative(kind, nu, z)
    sgn = -1 if kind in ("I", "K") else 1
    lhs = z * z * d2 + z * dz
    rhs = (nu * nu - sgn * z * z) * zv
    scale = abs(z * z * d2) + abs(z * dz) + abs(nu * nu * zv) + abs(z * z * zv)
    return [(lhs, rhs, scale)]


# ------------------------------------------------------------- registry

ALL_KINDS = ("J", "Y", "H1", "H2", "I", "K")


def _registry() -> dict[str, Identity]:
    ids: list[Identity] = []

    def add(id_, anchor, family, check, points, sample=None):
        ids.append(Identity(id_, anchor, family, check, points, sample))

    add("sonine_first", "Sonine finite integral, trigonometric and algebraic forms", "sonine_first",
        _sonine_first, lambda g: [dict(nu=nu, mu=mu, x=x) for nu, mu, x in itertools.product(g.nu, g.mu, g.x)])
    add("sonine_forms", "Sonine integral as a Riemann fractional integral", "default", _sonine_forms,
        lambda g: [dict(nu=nu, mu=mu, x=x) for nu, mu, x in _triples(g)],
        _sampler(["J"], mu=(0.05, 1.5)))
    for kind in ("H1", "H2", "J", "Y", "K"):
        add(f"weyl_raise_{kind}", f"Weyl-type raising operator on {kind}", "default",
            _shift_check(Route.WEYL_RAISE, kind), lambda g, k=kind: _with_kinds([k], g), _sampler([kind]))
    for kind in ("J", "I"):
        add(f"riemann_lower_{kind}", f"Riemann-type lowering operator on {kind}", "default",
            _shift_check(Route.RIEMANN_LOWER, kind), lambda g, k=kind: _with_kinds([k], g), _sampler([kind]))
    for kind in ("H1", "H2", "J", "Y"):
        anchor = "Weyl-type lowering of Hankel functions" if kind[0] == "H" else "Weyl-type lowering, J/Y mixture"
        add(f"weyl_lower_{kind}", f"{anchor} ({kind})", "default",
            _shift_check(Route.WEYL_LOWER, kind), lambda g, k=kind: _with_kinds([k], g),
            _sampler([kind], mu=(-0.9, -0.05)))
    comp_kinds = {Route.WEYL_RAISE: ("H1", "J", "K"), Route.RIEMANN_LOWER: ("J", "I"),
                  Route.WEYL_LOWER: ("H1", "H2")}
    for route, kinds in comp_kinds.items():
        add(f"exponent_addition_{route.value}", f"exponent addition, {route.value.replace('_', ' ')}",
            "composition", _composition_check(route), lambda g, k=kinds: _mu_pairs(k, g))
        add(f"inverse_{route.value}", f"inverse operator, {route.value.replace('_', ' ')}", "composition",
            _inverse_check(route), lambda g, k=kinds: _with_kinds(k, replace(g, spots=())))
    add("riemann_product", "product of Riemann fractional integrals", "nested", _riemann_product, _mu_self_pairs)
    for d in ("plus", "minus"):
        add(f"lommel_{d}", f"Lommel expansion of the translation e^(-u P{'+' if d == 'plus' else '-'})",
            "lommel", _lommel, lambda g, d=d: _group_points(ALL_KINDS, [d], g),
            _group_sampler(ALL_KINDS, [d], x_max=4.0))
    add("group_law", "group law of E(2) translations", "group", _group_law,
        lambda g: _group_points(ALL_KINDS, ["plus", "minus"], g), _group_sampler(ALL_KINDS, ["plus", "minus"]))
    add("taylor", "Taylor coefficients of the translation are powers of P+-", "group", _taylor,
        lambda g: _group_points(ALL_KINDS, ["plus", "minus"], replace(g, u=(0.0,))),
        _group_sampler(ALL_KINDS, ["plus", "minus"]))
    add("stepping", "stepping relations P+- Z_nu (J, Y, H1, H2)", "default", _stepping,
        lambda g: _nu_x(("J", "Y", "H1", "H2"), g), _sampler(("J", "Y", "H1", "H2")))
    add("stepping_IK", "stepping relations, modified Bessel analogues", "default", _stepping,
        lambda g: _nu_x(("I", "K"), g), _sampler(("I", "K")))
    add("stepping_compose", "P+ P- acting on Z_nu", "default", _step_compose,
        lambda g: _nu_x(ALL_KINDS, g), _sampler(ALL_KINDS))
    for kind in ("H1", "H2", "J", "Y"):
        add(f"mehler_sonine_{kind}", f"Mehler-Sonine representation of {kind}", "default",
            _represent("mehler_sonine", kind), lambda g, k=kind: _order_x([k], g),
            _sampler([kind], mu=(-0.45, 0.45)))
    add("mehler_sonine_combination", "Mehler-Sonine: (H1 + H2)/2 = J", "default", _mehler_combination,
        lambda g: _order_x(["J"], g), _sampler(["J"], mu=(-0.45, 0.45)))
    for kind in ("H1", "H2"):
        add(f"hankel_loop_{kind}", f"Hankel loop representation of {kind}", "default",
            _represent("hankel_loop", kind), lambda g, k=kind: _order_x([k], g), _sampler([kind], mu=(-1.4, 2.4)))
    for kind in ("J", "I"):
        add(f"poisson_{kind}", f"Poisson representation of {kind}", "default",
            _represent("poisson", kind), lambda g, k=kind: _order_x([k], g), _sampler([kind], mu=(-1.4, 2.4)))
    add("besselcore_wronskian", "Wronskians of J/Y, I/K, H1/H2", "default", _wronskian,
        lambda g: _nu_x(["all"], g), _sampler(["all"]))
    add("besselcore_reflection", "order reflection nu -> -nu", "default", _reflection,
        lambda g: _nu_x(["all"], g), _sampler(["all"]))
    add("besselcore_ode", "Bessel and modified Bessel differential equations", "default", _ode,
        lambda g: _nu_x(ALL_KINDS, g), _sampler(ALL_KINDS))
    return {i.id: i for i in ids}


IDENTITIES: dict[str, Identity] = _registry()


def identity_ids() -> list[str]:
    return sorted(IDENTITIES)


# ------------------------------------------------------------- running


def validate_config(config: SuiteConfig) -> list[Identity]:
    # tol below quad_tol is allowed: such a run simply reports failures
    if not (config.tol > 0 and config.quad_tol > 0):
        raise ConfigError(f"tol and quad_tol must be positive (got tol={config.tol}, quad_tol={config.quad_tol})")
    if config.output_format not in ("json", "csv"):
        raise ConfigError(f"unknown output format {config.output_format!r}")
    if config.n_random < 0:
        raise ConfigError("n_random must be non-negative")
    chosen = identity_ids() if config.identities is None else sorted(config.identities)
    if not chosen:
        raise ConfigError("no identities selected")
    unknown = [i for i in chosen if i not in IDENTITIES]
    if unknown:
        raise ConfigError(f"unknown identity id(s): {', '.join(unknown)}")
    out = [IDENTITIES[i] for i in chosen]
    for ident in out:
        if not ident.points(config.grid(ident.family)):
            raise ConfigError(f"empty grid for identity {ident.id!r} (family {ident.family!r})")
    return out


def _evaluate(ident: Identity, p: Point, qt: float) -> float | None:
    """Worst relative error over the pairs of one point; None for a validity skip."""
    try:
        pairs = ident.check(p, qt)
    except SKIP_ERRORS:
        return None
    except NUMERIC_ERRORS:
        return math.inf
    return max(rel_err(*pr) for pr in pairs)


def _freeze_point(p: Point) -> tuple:
    out = []
    for k, v in p.items():
        if isinstance(v, str) or isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            out.append((k, v if isinstance(v, str) else int(v)))
        else:
            out.append((k, complex(v)))
    return tuple(out)


def run_identity(ident: Identity, config: SuiteConfig) -> IdentityReport:
    qt = config.quad_tol
    errs, worst, worst_err = [], (), -1.0
    skips = 0
    pts = list(ident.points(config.grid(ident.family)))
    results = [(p, _evaluate(ident, p, qt)) for p in pts]
    if ident.sample is not None and config.n_random:
        rng = np.random.default_rng([config.seed, zlib.crc32(ident.id.encode())])
        drawn, attempts = 0, 0
        while drawn < config.n_random and attempts < 50 * config.n_random:
            attempts += 1
            p = ident.sample(rng)
            e = _evaluate(ident, p, qt)
            if e is not None:  # draws outside the validity region are redrawn
                results.append((p, e))
                drawn += 1
    for p, e in results:
        if e is None:
            skips += 1
            continue
        errs.append(e)
        if e > worst_err or math.isnan(e):
            worst, worst_err = _freeze_point(p), e
    n = len(results)
    if errs:
        mx = max(errs)
        mean = float(np.mean(errs))
        status = "pass" if mx <= config.tol else "fail"
    else:
        mx = mean = 0.0
        status = "skipped"
    return IdentityReport(ident.id, ident.anchor, n, float(mx), mean, skips, status, worst)


def run_suite(config: SuiteConfig) -> list[IdentityReport]:
    chosen = validate_config(config)
    return sorted((run_identity(i, config) for i in chosen), key=lambda r: r.identity_id)


# ------------------------------------------------------------- reports


def _json_value(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def report_to_dict(r: IdentityReport) -> dict:
    return {
        "identity_id": r.identity_id,
        "paper_anchor": r.paper_anchor,
        "grid_size": r.grid_size,
        "max_rel_err": r.max_rel_err,
        "mean_rel_err": r.mean_rel_err,
        "n_validity_skips": r.n_validity_skips,
        "status": r.status,
        "worst_point": {k: _json_value(v) for k, v in r.worst_point},
    }


def report_from_dict(d: dict) -> IdentityReport:
    wp = tuple((k, complex(*v) if isinstance(v, list) else v) for k, v in d.get("worst_point", {}).items())
    return IdentityReport(d["identity_id"], d["paper_anchor"], int(d["grid_size"]), float(d["max_rel_err"]),
                          float(d["mean_rel_err"]), int(d["n_validity_skips"]), d["status"], wp)


def format_report(reports: Sequence[IdentityReport], fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps([report_to_dict(r) for r in reports], indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in reports:
            w.writerow([r.identity_id, r.paper_anchor, r.grid_size, repr(r.max_rel_err), repr(r.mean_rel_err),
                        r.n_validity_skips, r.status])
        return buf.getvalue()
    raise ConfigError(f"unknown output format {fmt!r}")


def emit_report(reports: Sequence[IdentityReport], fmt: str, path) -> None:
    text = format_report(reports, fmt)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write report to {path}: {exc}") from exc


def load_report(path) -> list[IdentityReport]:
    """Read back a json report written by :func:`emit_report`."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise IoError(f"cannot read report {path}: {exc}") from exc
    return [report_from_dict(d) for d in data]


__all__ = [
    "Grid", "SuiteConfig", "IdentityReport", "Identity", "DEFAULT_GRIDS", "IDENTITIES", "identity_ids",
    "run_suite", "run_identity", "validate_config", "emit_report", "format_report", "load_report", "rel_err",
]
