import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from fracbessel import contours
from fracbessel.complexmath import gamma, rgamma
from fracbessel.contours import Arc, Contour, Line, Ray, gauss_kronrod, integrate, loop_contour, ray, segment, tanh_sinh
from fracbessel.errors import GeometryError, QuadratureNonConvergence, TailError


def test_residue():
    c = Contour((Arc(0, 1, 0, 2 * math.pi),))
    v, _ = integrate(lambda p: 1 / p.t, c)
    assert abs(v / (2j * math.pi) - 1) < 1e-13


def test_inverse_sqrt_on_unit_interval():
    v, err = integrate(lambda p: p.offset(0) ** -0.5, segment(0, 1, start_exponent=0.5))
    assert abs(v - 2) < 1e-12 and err <= 1e-10


def test_gamma_half_on_ray():
    v, _ = integrate(lambda p: np.exp(-p.t) * p.offset(0) ** -0.5, ray(0, 0, start_exponent=0.5, decay_rate=1))
    assert abs(v - math.sqrt(math.pi)) < 1e-12


def test_gaussian_tail():
    # high-resolution trapezoid with Richardson extrapolation gives 0.13940279264033098825
    v, _ = integrate(lambda p: np.exp(-p.t**2), ray(1, 0, decay_rate=2))
    assert abs(v - 0.13940279264033098825) < 1e-13


def test_loop_against_collapsed_half_power():
    # loop (1, 0+, 1) of t^{-1/2} = (e^{-2 pi i a} - 1) * int_0^1 t^{-a} dt with a = 1/2, i.e. -2 * 2
    v, _ = integrate(lambda p: np.exp(-0.5 * p.log_around), loop_contour(1, 0))
    assert abs(v - (cmath.exp(-1j * math.pi) - 1) * 2) < 1e-12
    assert abs(v + 4) < 1e-12


@pytest.mark.parametrize("mu", [-0.5, 0.7 + 0.3j, 2.5, -1.3])
def test_constant_operator_identity(mu):
    # (1/2 pi i) e^{i pi mu} Gamma(mu+1) loop_(inf,0+,inf) e^{-t} t^{-mu-1} dt = 1
    c = loop_contour("inf", 0, decay_rate=1)
    v, _ = integrate(lambda p: np.exp(-p.t - (mu + 1) * p.log_around), c)
    assert abs(v * cmath.exp(1j * math.pi * mu) * gamma(mu + 1) / (2j * math.pi) - 1) < 1e-11


@pytest.mark.parametrize("mu", [-0.25, -0.5, -0.8 + 0.4j])
def test_collapse_equivalence(mu):
    g = lambda t: np.cos(t) * np.exp(-t)  # noqa: E731
    loop = loop_contour("inf", 0, decay_rate=1)
    lv, _ = integrate(lambda p: g(p.t) * np.exp((-mu - 1) * p.log_around), loop)
    lv *= cmath.exp(1j * math.pi * mu) * gamma(mu + 1) / (2j * math.pi)
    cv, _ = integrate(lambda p: g(p.t) * np.exp((-mu - 1) * np.log(p.offset(0))),
                      ray(0, 0, start_exponent=(mu + 1).real, decay_rate=1))
    cv *= rgamma(-mu)
    assert abs(lv - cv) < 1e-10 * abs(cv)


@pytest.mark.parametrize("mu", [0.7 + 0.3j, -0.5, 1.5])
def test_reversal_negates(mu):
    c = loop_contour("inf", 0, decay_rate=1)
    f = lambda p: np.exp(-p.t - (mu + 1) * p.log_around)  # noqa: E731
    v, _ = integrate(f, c)
    w, _ = integrate(f, c.reversed())
    assert abs(v + w) <= 1e-13 * abs(v)


@pytest.mark.parametrize("r", [0.4, 0.2, 0.1])
def test_loop_radius_independence(r):
    mu = 0.6 + 0.2j
    ref, _ = integrate(lambda p: np.exp(-p.t - (mu + 1) * p.log_around), loop_contour("inf", 0, 0.5, decay_rate=1))
    v, _ = integrate(lambda p: np.exp(-p.t - (mu + 1) * p.log_around), loop_contour("inf", 0, r, decay_rate=1))
    assert abs(v - ref) <= 1e-11 * abs(ref)


def test_geometry_errors():
    with pytest.raises(GeometryError):
        loop_contour(1, 0, loop_radius=2.0)
    with pytest.raises(GeometryError):
        Contour((Line(0, 1), Line(2, 3)))
    with pytest.raises(GeometryError):
        Arc(0, 0.0, 0, 1)
    with pytest.raises(GeometryError):
        Ray(0, 0, truncation=-1.0)
    with pytest.raises(GeometryError):
        segment(0, 1, start_exponent=1.0)


def test_tail_error_without_decay():
    with pytest.raises(TailError):
        integrate(lambda p: np.exp(-p.t), ray(0, 0))


def test_subdivision_limit():
    with pytest.raises(QuadratureNonConvergence):
        gauss_kronrod(lambda t: np.sin(1 / (t + 1e-300)) / (t + 1e-300), [0.0, 1.0], 1e-14, max_panels=64)


def test_tanh_sinh_endpoint_singularities():
    # int_0^1 t^{-0.9} (1-t)^{-0.9} dt = B(0.1, 0.1), with u = t and um = 1 - t supplied exactly
    v, _ = tanh_sinh(lambda u, um: u**-0.9 * um**-0.9, 1e-12)
    ref = gamma(0.1) ** 2 / gamma(0.2)
    assert abs(v - ref) < 1e-10 * abs(ref)


def test_default_loop_radius():
    c = loop_contour(0.5, 0)
    assert c.segments[1].radius == pytest.approx(0.05)
    c = loop_contour(3, 0)
    assert c.segments[1].radius == pytest.approx(0.1)


@given(st.floats(0.05, 0.95), st.floats(0.1, 5))
def test_power_integral(beta, x):
    v, _ = integrate(lambda p: p.offset(0) ** -beta, segment(0, x, start_exponent=beta))
    ref = x ** (1 - beta) / (1 - beta)
    assert abs(v - ref) <= 1e-10 * ref


@given(st.floats(-math.pi, math.pi), st.floats(0.2, 3))
def test_cauchy_on_shifted_circle(theta, r):
    # a circle not centred on the pole encloses it iff r exceeds the distance
    assume(abs(r - 0.5) > 0.05)
    c0 = 0.5 * cmath.exp(1j * theta)
    c = Contour((Arc(c0, r, 0, 2 * math.pi),))
    v, _ = integrate(lambda p: 1 / p.t, c)
    expected = 2j * math.pi if r > 0.5 else 0
    assert abs(v - expected) < 1e-10
