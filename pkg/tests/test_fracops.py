import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from fracbessel import fracops, groupaction
from fracbessel.errors import DomainError, TailError, ValidityError
from fracbessel.fracops import Form, ShiftRequest

mpmath.mp.dps = 30

J1_1 = 0.44005058574493351596
J1_2 = 0.5767248077568733872
J_MHALF_1 = 0.43109886801837607952
I1_1 = 0.56515910399248502721
PI_J1_PI = 0.8941454712324491258
H1_1_2_HALF = 0.2883624038784366936 - 0.053516215770468773444j
H1_32_2_SCALED = 1.3895886498578216399 - 1.1189916201760507761j


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def mp_bessel(kind, nu, z):
    nu, z = mpmath.mpc(nu), mpmath.mpc(z)
    f = {
        "J": mpmath.besselj, "Y": mpmath.bessely, "I": mpmath.besseli, "K": mpmath.besselk,
        "H1": lambda n, x: mpmath.hankel1(n, x), "H2": lambda n, x: mpmath.hankel2(n, x),
    }[kind]
    return complex(f(nu, z))


def shift(route, kind, nu, mu, z, form=None):
    return fracops.shift(ShiftRequest.make(route, kind, nu, mu, z, form)).value


# ------------------------------------------------------- riemann_integral


def test_riemann_integral_plain():
    assert abs(fracops.riemann_integral(np.ones_like, 1, 2.5) - 2.5) < 1e-13


def test_riemann_integral_beta():
    v = fracops.riemann_integral(np.ones_like, 0.5, 1)
    assert abs(v - 2 / math.sqrt(math.pi)) < 1e-12


def test_riemann_integral_sonine_example():
    def f(t):
        return np.sqrt(np.sqrt(t)) * _j(0.5, 2 * np.sqrt(t))

    # x^{(nu+mu)/2} J_{nu+mu}(2 sqrt x) at x = 1 is J_1(2) itself
    v = fracops.riemann_integral(f, 0.5, 1, start_exponent=None)
    assert rel(v, J1_2) < 1e-10


def _j(nu, w):
    from fracbessel.besselcore import evaluate

    return evaluate("J", nu, w)


@pytest.mark.parametrize("x", [0.5, 1.0, 3.0])
def test_riemann_integral_n1_n2_repeated(x):
    # f = cos: one integral is sin x, two are 1 - cos x
    assert abs(fracops.riemann_integral(np.cos, 1, x) - math.sin(x)) < 1e-10
    assert abs(fracops.riemann_integral(np.cos, 2, x) - (1 - math.cos(x))) < 1e-10


@given(st.floats(0.1, 3), st.floats(0.2, 2.5))
def test_riemann_integral_power_rule(alpha, x):
    # R_alpha t^2 = 2 x^{2+alpha} / Gamma(3+alpha)
    v = fracops.riemann_integral(lambda t: t * t, alpha, x)
    assert rel(v, 2 * x ** (2 + alpha) / math.gamma(3 + alpha)) < 1e-10


@pytest.mark.parametrize("alpha", [0, -0.5, 0.3j])
def test_riemann_integral_rejects_nonpositive(alpha):
    with pytest.raises(DomainError):
        fracops.riemann_integral(np.ones_like, alpha, 1)


# --------------------------------------------------------- weyl_integral


@pytest.mark.parametrize("x", [0.0, 0.5, 2.0])
def test_weyl_integral_exp_alpha1(x):
    v = fracops.weyl_integral(lambda t: np.exp(-t), 1, x, decay_rate=1.0)
    assert abs(v - math.exp(-x)) < 1e-12


@pytest.mark.parametrize("alpha", [0.3, 1.7, 2 + 0.5j])
def test_weyl_integral_exp_at_zero(alpha):
    v = fracops.weyl_integral(lambda t: np.exp(-t), alpha, 0.0, decay_rate=1.0)
    assert abs(v - 1) < 1e-10


def test_weyl_integral_algebraic_tail():
    # int_1^inf t^{-1} (t-1)^{-1/2} dt = pi, divided by Gamma(1/2)
    v = fracops.weyl_integral(lambda t: 1 / t, 0.5, 1.0)
    assert abs(v - math.sqrt(math.pi)) < 1e-10


def test_weyl_integral_divergent_tail():
    with pytest.raises(TailError):
        fracops.weyl_integral(lambda t: 1 / np.sqrt(t), 0.5, 1.0)


def test_weyl_integral_rejects_nonpositive():
    with pytest.raises(DomainError):
        fracops.weyl_integral(lambda t: np.exp(-t), -0.5, 1.0, decay_rate=1.0)


# ------------------------------------------------------------ weyl_raise


def test_weyl_raise_h1_example():
    assert rel(shift("weyl_raise", "H1", 0.5, 0.5, 4), H1_1_2_HALF) < 1e-9


def test_weyl_raise_j_example_matches_step():
    v = shift("weyl_raise", "J", 0, 1, 1)
    assert rel(v, J1_1) < 1e-9
    assert rel(v, groupaction.step("J", 0, 1, "plus")) < 1e-9


@pytest.mark.parametrize("z", [0.7, 3.0])
def test_weyl_raise_k_small_mu_is_identity(z):
    r = fracops.shift(ShiftRequest.make("weyl_raise", "K", 0, -1e-9, z))
    # the endpoint singularity v^{-mu-1} is too strong for the collapsed form here
    assert r.form == Form.LOOP
    assert rel(r.value, mp_bessel("K", 0, math.sqrt(z))) < 1e-8


@pytest.mark.parametrize("kind", ["H1", "H2", "J", "Y", "K"])
@pytest.mark.parametrize("nu, mu, z", [(0, 0.25, 2), (1 / 3, -0.5, 5), (1, 0.75, 0.5), (0.5 + 0.25j, -0.25, 4)])
def test_weyl_raise_vs_mpmath(kind, nu, mu, z):
    lam = nu + mu
    expected = complex(z ** (-lam / 2) * mp_bessel(kind, lam, cmath.sqrt(z)))
    assert rel(shift("weyl_raise", kind, nu, mu, z), expected) < 1e-8


@pytest.mark.parametrize("kind", ["H1", "H2", "J", "Y", "K"])
def test_weyl_raise_loop_equals_collapsed(kind):
    a = shift("weyl_raise", kind, 0.5, -0.5, 2, "loop")
    b = shift("weyl_raise", kind, 0.5, -0.5, 2, "collapsed")
    assert rel(a, b) < 1e-9


def test_weyl_raise_k_integral_form():
    nu, mu, x = 1 / 3, -0.5, 2.0
    expected = x ** (-(nu + mu) / 2) * mp_bessel("K", nu + mu, math.sqrt(x))
    assert rel(fracops.k_weyl_form(nu, mu, x), expected) < 1e-8


@pytest.mark.parametrize("kind", ["J", "Y"])
def test_weyl_raise_jy_strip(kind):
    req = ShiftRequest.make("weyl_raise", kind, 0, -0.75, 2)
    with pytest.raises(ValidityError):
        fracops.shift(req)


def test_collapsed_needs_negative_mu():
    with pytest.raises(ValidityError):
        fracops.shift(ShiftRequest.make("weyl_raise", "K", 0, 0.5, 2, "collapsed"))


def test_form_choice_recorded():
    r = fracops.shift(ShiftRequest.make("weyl_raise", "K", 0, -0.5, 2))
    assert r.form == Form.COLLAPSED
    r = fracops.shift(ShiftRequest.make("weyl_raise", "K", 0, 0.5, 2))
    assert r.form == Form.LOOP


def test_route_kind_compat():
    with pytest.raises(ValidityError):
        fracops.shift(ShiftRequest.make("weyl_raise", "I", 0, 0.5, 2))
    with pytest.raises(ValidityError):
        fracops.shift(ShiftRequest.make("weyl_lower", "K", 0, -0.5, 2))


# --------------------------------------------------------- riemann_lower


def test_riemann_lower_j_half_to_minus_half():
    assert rel(shift("riemann_lower", "J", 0.5, 1, 1), J_MHALF_1) < 1e-9


def test_riemann_lower_i_identity():
    assert rel(shift("riemann_lower", "I", 1, 1e-12, 1), I1_1) < 1e-9


def test_riemann_lower_negative_mu():
    assert rel(shift("riemann_lower", "J", 0.5, -0.5, 2), J1_2) < 1e-9


@pytest.mark.parametrize("kind", ["Y", "K", "H1", "H2"])
def test_riemann_lower_rejects(kind):
    with pytest.raises(ValidityError, match="inhomogeneous|Riemann"):
        fracops.shift(ShiftRequest.make("riemann_lower", kind, 0.5, 0.5, 1))


def test_riemann_lower_rejects_low_nu():
    with pytest.raises(ValidityError):
        fracops.shift(ShiftRequest.make("riemann_lower", "J", -1.5, 0.5, 1))


@pytest.mark.parametrize("kind", ["J", "I"])
@pytest.mark.parametrize("nu, mu, x", [(0, 0.25, 0.5), (1 / 3, -0.75, 5), (2.5, 1, 10), (0.5 + 0.25j, 0.5, 2)])
def test_riemann_lower_vs_mpmath(kind, nu, mu, x):
    assert rel(shift("riemann_lower", kind, nu, mu, x), mp_bessel(kind, nu - mu, x)) < 1e-8


@pytest.mark.parametrize("kind", ["J", "I"])
def test_riemann_z_form(kind):
    nu, mu, z = 0.5, -0.5, 3.0
    lam = nu - mu
    expected = z ** (lam / 2) * mp_bessel(kind, lam, math.sqrt(z))
    assert rel(fracops.riemann_z_form(kind, nu, mu, z), expected) < 1e-9


# ------------------------------------------------------------ weyl_lower


def test_weyl_lower_h1_example():
    assert rel(shift("weyl_lower", "H1", 1, -0.5, 4), H1_32_2_SCALED) < 1e-9


def test_weyl_lower_j_example_outside_strip():
    # nu = 1 puts the strip at -1/4 < Re mu < 0, so mu = -1/2 is refused
    with pytest.raises(ValidityError):
        fracops.shift(ShiftRequest.make("weyl_lower", "J", 1, -0.5, 4))


@pytest.mark.parametrize("kind", ["J", "Y"])
@pytest.mark.parametrize("nu, mu, z", [(0, -0.5, 4), (1, -0.2, 2), (0.5, -0.4, 10), (0, -0.7, 0.5)])
def test_weyl_lower_mixture(kind, nu, mu, z):
    lam = nu - mu
    w = math.sqrt(z)
    jv, yv = mp_bessel("J", lam, w), mp_bessel("Y", lam, w)
    c, s = math.cos(math.pi * mu), math.sin(math.pi * mu)
    mix = c * jv + s * yv if kind == "J" else c * yv - s * jv
    assert rel(shift("weyl_lower", kind, nu, mu, z), z ** (lam / 2) * mix) < 1e-8


@pytest.mark.parametrize("kind", ["H1", "H2"])
@pytest.mark.parametrize("nu, mu, z", [(0.5, -1e-9, 2), (0, 0.75, 1), (1 / 3, -0.5, 2 * cmath.exp(1j * math.pi / 3))])
def test_weyl_lower_hankel(kind, nu, mu, z):
    lam = nu - mu
    expected = z ** (lam / 2) * mp_bessel(kind, lam, cmath.sqrt(z))
    assert rel(shift("weyl_lower", kind, nu, mu, z), expected) < 1e-8


# ---------------------------------------------------------------- Sonine


def test_sonine_first_examples():
    assert rel(fracops.sonine_first(0.5, 0.5, math.pi), PI_J1_PI) < 1e-10
    assert rel(fracops.sonine_first(0, 1, 1), J1_1) < 1e-10


def test_sonine_trig_equals_alg():
    nu, mu, x = 1 / 3, 0.75, 2.0
    trig = x ** (nu + mu) * fracops.sonine_trig(nu, mu, x)
    assert rel(trig, fracops.sonine_alg(nu, mu, x)) < 1e-10


def test_sonine_first_rejects():
    for args in [(0, -0.5, 1), (-1.5, 0.5, 1), (0, 0.5, -1)]:
        with pytest.raises(ValidityError):
            fracops.sonine_first(*args)


# --------------------------------------------------- addition and inverse


def _raise_chain(kind, nu, m1, m2, z):
    # reduced form: the first raise lands on order nu+m1, which the second raises further
    a = shift("weyl_raise", kind, nu, m1, z)
    b = shift("weyl_raise", kind, nu + m1, m2, z)
    assert rel(a, z ** (-(nu + m1) / 2) * mp_bessel(kind, nu + m1, cmath.sqrt(z))) < 1e-8
    return b


@pytest.mark.parametrize("kind", ["H1", "K", "J"])
def test_weyl_raise_exponent_addition(kind):
    nu, m1, m2, z = 0.5, 0.25, 0.5, 2.0
    assert rel(_raise_chain(kind, nu, m1, m2, z), shift("weyl_raise", kind, nu, m1 + m2, z)) < 1e-8


@pytest.mark.parametrize("kind", ["J", "I"])
def test_riemann_inverse(kind):
    nu, mu, x = 0.5, 0.3, 2.0
    down = shift("riemann_lower", kind, nu, mu, x)
    back = shift("riemann_lower", kind, nu - mu, -mu, x)
    assert rel(down, mp_bessel(kind, nu - mu, x)) < 1e-8
    assert rel(back, mp_bessel(kind, nu, x)) < 1e-8


@given(st.floats(0, 1.5), st.floats(-0.9, 0.9), st.floats(-0.9, 0.9), st.floats(0.3, 8))
def test_riemann_exponent_addition(nu, m1, m2, x):
    assume(nu - m1 > -0.95)
    assume(abs(m1) > 0.06 and abs(m2) > 0.06 and abs(m1 + m2) > 0.06)
    two = shift("riemann_lower", "J", nu - m1, m2, x)
    one = shift("riemann_lower", "J", nu, m1 + m2, x)
    assert abs(two - one) <= 1e-8 * max(abs(one), abs(mp_bessel("J", nu, x)), 1e-3)


@given(st.sampled_from(["H1", "H2", "K"]), st.floats(0, 2.5), st.floats(-0.9, 1.2), st.floats(0.3, 12))
def test_weyl_raise_route_consistency(kind, nu, mu, z):
    assume(abs(mu) > 0.06)
    lam = nu + mu
    expected = z ** (-lam / 2) * mp_bessel(kind, lam, math.sqrt(z))
    assert rel(shift("weyl_raise", kind, nu, mu, z), expected) < 1e-8


@given(st.floats(0, 2.5), st.floats(-0.9, 1.2), st.floats(0.3, 12))
def test_riemann_route_consistency(nu, mu, x):
    assume(abs(mu) > 0.06)
    v = shift("riemann_lower", "J", nu, mu, x)
    expected = mp_bessel("J", nu - mu, x)
    # J_{nu-mu}(x) can sit at a zero; scale by the order-nu envelope instead
    assert abs(v - expected) <= 1e-8 * max(abs(expected), abs(mp_bessel("J", nu, x)), 1e-3)
