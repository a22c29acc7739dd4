import cmath
import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracbessel import groupaction as ga
from fracbessel.besselcore import evaluate
from fracbessel.errors import DomainError, RadiusError
from fracbessel.groupaction import GroupShift

KINDS = ["J", "Y", "H1", "H2", "I", "K"]

J0_2 = 0.22389077914123566805
J0_SQRT15 = 0.65872522886486301836
J1_1 = 0.44005058574493351596
J32_2 = 0.49129377868716234501
J1_3 = 0.33905895852593645893
MINUS_EXAMPLE = 0.557287257712296985


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def mp_shift(kind, nu, x, t, u, direction):
    """Closed form of the translation in mpmath, written directly from the shifted argument."""
    f = {"J": mpmath.besselj, "Y": mpmath.bessely, "I": mpmath.besseli, "K": mpmath.besselk,
         "H1": mpmath.hankel1, "H2": mpmath.hankel2}[kind]
    nu, x, t, u = (mpmath.mpc(v) for v in (nu, x, t, u))
    if direction == "plus":
        r = 1 + 2 * u * t / x
        return complex(t**nu * r ** (-nu / 2) * f(nu, x * mpmath.sqrt(r)))
    r = 1 - 2 * u / (x * t)
    return complex(t**nu * r ** (nu / 2) * f(nu, x * mpmath.sqrt(r)))


# ------------------------------------------------------------ group_shift


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("direction", ["plus", "minus"])
def test_identity_element(kind, direction):
    g = GroupShift(kind, 1 / 3, 2.0, cmath.exp(0.4j), 0, direction)
    assert rel(ga.group_shift(g), cmath.exp(0.4j / 3) * complex(evaluate(kind, 1 / 3, 2.0))) < 1e-14


def test_plus_example():
    assert rel(ga.group_shift(GroupShift("J", 0, 1, 1, 1.5, "plus")), J0_2) < 1e-13


def test_minus_example():
    g = GroupShift("J", 0.5, 2, 1, 0.5, "minus")
    assert rel(ga.group_shift(g), MINUS_EXAMPLE) < 1e-13
    s, _ = ga.lommel_series(g, 40)
    assert rel(s, MINUS_EXAMPLE) < 1e-12


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("direction", ["plus", "minus"])
@pytest.mark.parametrize("u", [0.3, -0.2 + 0.4j])
def test_group_shift_vs_mpmath(kind, direction, u):
    nu, x, t = 0.5 + 0.25j, 1.5, 0.8 * cmath.exp(0.3j)
    g = GroupShift(kind, nu, x, t, u, direction)
    assert rel(ga.group_shift(g), mp_shift(kind, nu, x, t, u, direction)) < 1e-12


def test_singular_point():
    with pytest.raises(DomainError):
        ga.group_shift(GroupShift("Y", 0, 1, 1, -0.5, "plus"))
    # J at the shifted origin is the leading series term
    assert abs(ga.group_shift(GroupShift("J", 0, 1, 1, -0.5, "plus")) - 1) < 1e-15


# ------------------------------------------------------------ lommel


def test_lommel_specialisation():
    # z = 1, h = 1/2: the shifted argument is sqrt(z + h)
    s, last = ga.lommel_series(GroupShift("J", 0, 1, 1, 0.25, "plus"), 40)
    assert rel(s, J0_SQRT15) < 1e-14
    assert last < 1e-40


@pytest.mark.parametrize("kind", KINDS)
def test_lommel_zero_u(kind):
    s, _ = ga.lommel_series(GroupShift(kind, 1, 2, 1, 0, "plus"), 5)
    assert s == complex(evaluate(kind, 1, 2))


def test_radius_error():
    x, t = 2.0, 1.0
    with pytest.raises(RadiusError):
        ga.lommel_series(GroupShift("J", 0, x, t, 1.01 * x / (2 * t), "plus"), 10)
    with pytest.raises(RadiusError):
        ga.lommel_series(GroupShift("J", 0, x, 2.0, 1.01 * x * 2.0 / 2, "minus"), 10)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("nu", [0, 1 / 3, 0.5, 1])
@pytest.mark.parametrize("direction", ["plus", "minus"])
@pytest.mark.parametrize("x", [0.5, 2.0, 4.0])
def test_lommel_matches_closed_form(kind, nu, direction, x):
    t = 0.8 * cmath.exp(0.3j)
    g0 = GroupShift(kind, nu, x, t, 0, direction)
    for u in (0.5 * ga.radius(g0), -0.5 * ga.radius(g0), 0.5j * ga.radius(g0)):
        g = GroupShift(kind, nu, x, t, u, direction)
        s, _ = ga.lommel_series(g, 40)
        assert rel(s, ga.group_shift(g)) < 1e-10


def test_lommel_truncation_at_x5():
    # 40 terms fall just short of 1e-10 here; the tail is pure truncation and 60 terms clear it
    g = GroupShift("K", 1, 5.0, 1, 1.25, "plus")
    closed = ga.group_shift(g)
    assert 1e-10 < rel(ga.lommel_series(g, 40)[0], closed) < 1e-9
    assert rel(ga.lommel_series(g, 60)[0], closed) < 1e-13


def test_lommel_tail_decreases():
    g = GroupShift("K", 1 / 3, 2.0, 1, 0.4, "minus")
    errs = [abs(ga.lommel_series(g, n)[0] - ga.group_shift(g)) for n in (10, 20, 30)]
    assert errs[0] > errs[1] > errs[2]


def test_lommel_large_x_cancellation():
    # at x = 20 the K terms at u = radius/2 grow to about 1e12 |K_0(x)| before cancelling,
    # so double precision cannot reach 1e-10; the closed form itself is accurate
    g = GroupShift("K", 0, 20.0, 1, 5.0, "plus")
    closed = ga.group_shift(g)
    assert rel(closed, mp_shift("K", 0, 20.0, 1, 5.0, "plus")) < 1e-12
    s, _ = ga.lommel_series(g, 80)
    assert rel(s, closed) > 1e-10


# ------------------------------------------------------------- group law


@given(st.sampled_from(KINDS), st.sampled_from(["plus", "minus"]),
       st.complex_numbers(max_magnitude=0.3), st.complex_numbers(max_magnitude=0.3))
def test_group_law(kind, direction, u1, u2):
    g = GroupShift(kind, 0.5 + 0.25j, 2.0, cmath.exp(0.3j), u1, direction)
    two = ga.group_shift(ga.compose(g, u2))
    one = ga.group_shift(GroupShift(kind, 0.5 + 0.25j, 2.0, cmath.exp(0.3j), u1 + u2, direction))
    assert rel(two, one) < 1e-10


# --------------------------------------------------------------- stepping


def test_step_examples():
    assert rel(ga.step("J", 0, 1, "plus"), J1_1) < 1e-12
    assert rel(ga.step("J", 0.5, 2, "plus"), J32_2) < 1e-12
    assert rel(ga.step_compose("J", 1, 3), J1_3) < 1e-8


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("direction", ["plus", "minus"])
@pytest.mark.parametrize("nu, x", [(0, 0.5), (1 / 3, 2), (2.5, 10), (0.5 + 0.25j, 2 * cmath.exp(1j * math.pi / 3))])
def test_step_vs_neighbour(kind, direction, nu, x):
    sgn = 1 if direction == "plus" else -1
    expected = ga.step_sign(kind, direction) * complex(evaluate(kind, nu + sgn, x))
    assert rel(ga.step(kind, nu, x, direction), expected) < 1e-9


@pytest.mark.parametrize("kind", KINDS)
def test_step_compose_sign(kind):
    # the product of the two eigen-signs is -1 for I and K
    sign = -1 if kind in ("I", "K") else 1
    v = ga.step_compose(kind, 1 / 3, 2.0)
    assert rel(v, sign * complex(evaluate(kind, 1 / 3, 2.0))) < 1e-8


def test_step_zero():
    with pytest.raises(DomainError):
        ga.step("J", 0, 0, "plus")


# ----------------------------------------------------------------- Taylor


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("direction", ["plus", "minus"])
@pytest.mark.parametrize("n", [1, 2])
def test_taylor_fd(kind, direction, n):
    g = GroupShift(kind, 1 / 3, 2.0, 1, 0, direction)
    expected = (-1) ** n * ga.stepped(kind, 1 / 3, 2.0, 1, n, direction)
    assert rel(ga.translate_taylor(g, n), expected) < 1e-5


@given(st.sampled_from(KINDS), st.sampled_from(["plus", "minus"]), st.integers(0, 4),
       st.floats(0.5, 5), st.floats(-1, 1))
def test_taylor_cauchy(kind, direction, n, x, phi):
    g = GroupShift(kind, 0.5, x, cmath.exp(1j * phi), 0, direction)
    expected = (-1) ** n * ga.stepped(kind, 0.5, x, cmath.exp(1j * phi), n, direction)
    # roundoff on the circle |u| = rho is amplified by n! / rho^n
    rho = 0.5 * ga.radius(g)
    scale = max(abs(expected), math.factorial(n) * abs(ga.group_shift(g)) / rho**n)
    assert abs(ga.translate_taylor(g, n, method="cauchy") - expected) < 1e-11 * scale


def test_taylor_bad_method():
    g = GroupShift("J", 0, 1, 1, 0, "plus")
    with pytest.raises(ValueError):
        ga.translate_taylor(g, 3)
    with pytest.raises(ValueError):
        ga.translate_taylor(g, 1, method="spline")
