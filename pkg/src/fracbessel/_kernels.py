"""Compiled per-point Bessel kernels.

Kind codes: 0 J, 1 Y, 2 H1, 3 H2, 4 I, 5 K.  Every kernel returns
``(value, derivative, status)`` with status 0 ok, 1 domain error,
2 convergence failure.

Regions for J, Y, H1, H2 at order nu:

* |z| <= R = max(25, |nu|): ascending series summed in double-double.
  For |Im z| <= 3, Y comes from J_{-nu} (or the integer-order digamma
  series) and H1, H2 = J +- iY.  Farther off the axis the Hankel function
  that decays is computed from K by a trapezoid rule on
  K_nu(w) = int_0^inf exp(-w cosh t) cosh(nu t) dt and the other one as
  2J - H.
* |z| > R: Hankel asymptotic expansions, with forward recurrence from a
  reduced order when |nu| is large and the analytic-continuation formulas
  for the half-plane where one expansion is not valid.

I and K are obtained by rotating the argument by +-pi/2.
"""

import cmath
import math

from numba import njit

from ._dd import (
    cdd_abs_hi,
    cdd_add,
    cdd_div,
    cdd_mul,
    cdd_to,
    dd_add,
    dd_div,
    dd_mul_d,
    two_prod,
    two_sum,
)

PI = math.pi
LOG_PI = math.log(math.pi)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
EULER_HI = 0.5772156649015329
EULER_LO = -4.942915152430645e-18
INT_TOL = 1e-12
SERIES_RADIUS = 25.0
AXIS_BAND = 3.0
# the J series loses about |z| - |Im z| nepers to cancellation; double-double absorbs 40
SERIES_GAIN = 40.0
# above this order the trapezoid rule for K oscillates too much off the real axis
KTRAP_MAX_ORDER = 20.0

_LC = (
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


@njit(cache=True)
def _lanczos(z):
    zm = z - 1.0
    acc = complex(_LC[0], 0.0)
    for i in range(1, 9):
        acc += _LC[i] / (zm + i)
    t = zm + 7.5
    return HALF_LOG_2PI + (zm + 0.5) * cmath.log(t) - t + cmath.log(acc)


@njit(cache=True)
def lgamma_c(z):
    if z.real < 0.5:
        return LOG_PI - cmath.log(cmath.sin(PI * z)) - _lanczos(1.0 - z)
    return _lanczos(z)


@njit(cache=True)
def sincospi(nu):
    """(sin(pi nu), cos(pi nu)) exact at integers and half-integers."""
    n = round(2.0 * nu.real)
    a = PI * complex(nu.real - 0.5 * n, nu.imag)
    sa = cmath.sin(a)
    ca = cmath.cos(a)
    q = int(n) % 4
    if q == 0:
        return sa, ca
    if q == 1:
        return ca, -sa
    if q == 2:
        return -sa, -ca
    return -ca, sa


@njit(cache=True)
def exp_ipi(nu):
    """exp(i pi nu), exact phase at integers and half-integers."""
    n = round(2.0 * nu.real)
    e = cmath.exp(1j * PI * complex(nu.real - 0.5 * n, nu.imag))
    q = int(n) % 4
    if q == 1:
        return 1j * e
    if q == 2:
        return -e
    if q == 3:
        return -1j * e
    return e


@njit(cache=True)
def near_int(nu):
    if abs(nu.imag) > INT_TOL:
        return False, 0
    n = round(nu.real)
    if abs(nu.real - n) <= INT_TOL:
        return True, int(n)
    return False, 0


@njit(cache=True)
def _minus_quarter_square(z):
    # -(z/2)^2 in double-double
    a = 0.5 * z.real
    b = 0.5 * z.imag
    a2h, a2l = two_prod(a, a)
    b2h, b2l = two_prod(b, b)
    rh, rl = dd_add(a2h, a2l, -b2h, -b2l)
    abh, abl = two_prod(a, b)
    return (-rh, -rl, -2.0 * abh, -2.0 * abl)


@njit(cache=True)
def j_series(nu, z):
    """J_nu and J_nu' from the ascending series; nu must not be a negative integer."""
    w = _minus_quarter_square(z)
    wabs = abs(complex(w[0], w[2]))
    t = (1.0, 0.0, 0.0, 0.0)
    s = t
    sd = (nu.real, 0.0, nu.imag, 0.0)
    tmax = 1.0
    ok = False
    for k in range(1, 4000):
        kh, kl = two_sum(float(k), nu.real)
        ch, cl = dd_mul_d(kh, kl, float(k))
        cih, cil = two_prod(nu.imag, float(k))
        t = cdd_div(cdd_mul(t, w), (ch, cl, cih, cil))
        s = cdd_add(s, t)
        fh, fl = two_sum(2.0 * k, nu.real)
        td = cdd_mul(t, (fh, fl, nu.imag, 0.0))
        sd = cdd_add(sd, td)
        ta = cdd_abs_hi(t)
        if ta > tmax:
            tmax = ta
        if k * k > wabs and abs(k + nu) ** 2 > wabs:
            if ta <= 1e-34 * tmax or (
                ta <= 1e-18 * cdd_abs_hi(s) and cdd_abs_hi(td) <= 1e-18 * cdd_abs_hi(sd)
            ):
                ok = True
                break
    lz = cmath.log(0.5 * z)
    pref = cmath.exp(nu * lz - lgamma_c(nu + 1.0))
    j = pref * cdd_to(s)
    jd = pref * cdd_to(sd) / z
    return j, jd, ok


@njit(cache=True)
def y_int_series(n, z, j, jd):
    """Y_n and Y_n' for integer n >= 0 from the digamma series; j, jd are J_n, J_n'."""
    w = _minus_quarter_square(z)
    wabs = abs(complex(w[0], w[2]))
    hk_h, hk_l = 0.0, 0.0
    hn_h, hn_l = 0.0, 0.0
    for m in range(1, n + 1):
        qh, ql = dd_div(1.0, 0.0, float(m), 0.0)
        hn_h, hn_l = dd_add(hn_h, hn_l, qh, ql)
    ph, pl = dd_add(hn_h, hn_l, -2.0 * EULER_HI, -2.0 * EULER_LO)
    t = (1.0, 0.0, 0.0, 0.0)
    s3 = (ph, pl, 0.0, 0.0)
    s3d = (ph * n, pl * n, 0.0, 0.0)
    tmax = 1.0
    ok = False
    for k in range(1, 4000):
        ch, cl = two_prod(float(k), float(n + k))
        t = cdd_div(cdd_mul(t, w), (ch, cl, 0.0, 0.0))
        qh, ql = dd_div(1.0, 0.0, float(k), 0.0)
        hk_h, hk_l = dd_add(hk_h, hk_l, qh, ql)
        qh, ql = dd_div(1.0, 0.0, float(n + k), 0.0)
        hn_h, hn_l = dd_add(hn_h, hn_l, qh, ql)
        ph, pl = dd_add(hk_h, hk_l, hn_h, hn_l)
        ph, pl = dd_add(ph, pl, -2.0 * EULER_HI, -2.0 * EULER_LO)
        term = cdd_mul(t, (ph, pl, 0.0, 0.0))
        s3 = cdd_add(s3, term)
        termd = cdd_mul(term, (2.0 * k + n, 0.0, 0.0, 0.0))
        s3d = cdd_add(s3d, termd)
        ta = cdd_abs_hi(term)
        if ta > tmax:
            tmax = ta
        if k * k > wabs and ta <= 1e-34 * tmax * (1.0 + k):
            ok = True
            break
        if k * k > wabs and ta <= 1e-18 * cdd_abs_hi(s3) and cdd_abs_hi(termd) <= 1e-18 * cdd_abs_hi(s3d):
            ok = True
            break
    half = 0.5 * z
    lz = cmath.log(half)
    pref = cmath.exp(n * lz - lgamma_c(complex(n + 1.0, 0.0)))
    f = 0j
    fd = 0j
    if n > 0:
        c = math.exp(math.lgamma(float(n)))
        for k in range(n):
            p = half ** (2 * k - n)
            f += c * p
            fd += c * 0.5 * (2 * k - n) * p / half
            if k < n - 1:
                c = c / ((k + 1.0) * (n - k - 1.0))
    y = (2.0 / PI) * j * lz - f / PI - pref * cdd_to(s3) / PI
    yd = (2.0 / PI) * (jd * lz + j / z) - fd / PI - pref * cdd_to(s3d) / (PI * z)
    return y, yd, ok


@njit(cache=True)
def _k_exponent(nu, w, t, y):
    s = complex(t, y)
    return (-w * (cmath.cosh(s) - 1.0)).real + abs((nu * s).real) + abs(t)


@njit(cache=True)
def k_trapezoid(nu, w):
    """K_nu(w), K_nu'(w) for Re w > 0 by the trapezoid rule in t."""
    theta = math.atan2(w.imag, w.real)
    amax = 0.5 * PI - abs(theta)
    if amax <= 1e-3:
        return 0j, 0j, False
    anu = abs(nu.real)
    # real-line profile: peak value and truncation point
    l0 = -1e300
    tt = 0.0
    tpk = 0.0
    while True:
        f = -w.real * (math.cosh(tt) - 1.0) + anu * tt
        if f > l0:
            l0 = f
            tpk = tt
        if tt > tpk and f + tt < l0 - 48.0:
            break
        tt += 0.05
        if tt > 60.0:
            return 0j, 0j, False
    big_t = tt
    best_h = 0.0
    for frac in (0.15, 0.3, 0.45, 0.6, 0.75, 0.9):
        a = min(frac * amax, 1.4)
        mx = -1e300
        for i in range(65):
            ti = big_t * i / 64.0
            for sgn in (-1.0, 1.0):
                e = _k_exponent(nu, w, ti, sgn * a) + abs(nu.imag) * a
                if e > mx:
                    mx = e
        h = 2.0 * PI * a / (mx - l0 + 44.0)
        if h > best_h:
            best_h = h
    h = best_h
    n = int(math.ceil(big_t / h)) + 1
    s = 0j
    sd = 0j
    for k in range(n + 1):
        tk = k * h
        e = -w * (math.cosh(tk) - 1.0)
        fk = 0.5 * (cmath.exp(e + nu * tk) + cmath.exp(e - nu * tk))
        if k == 0:
            fk *= 0.5
        s += fk
        sd += math.cosh(tk) * fk
    ew = cmath.exp(-w)
    return h * s * ew, -h * sd * ew, True


@njit(cache=True)
def hankel_asym(nu, z, which):
    """Direct Hankel asymptotic expansion (H1 if which == 1 else H2)."""
    sg = 1.0 if which == 1 else -1.0
    mu4 = 4.0 * nu * nu
    iz = complex(0.0, sg) / z
    p = complex(1.0, 0.0)
    pd = 0j
    a = complex(1.0, 0.0)
    pw = complex(1.0, 0.0)
    prev = 1e300
    ok = False
    for k in range(1, 200):
        a = a * (mu4 - (2.0 * k - 1.0) ** 2) / (8.0 * k)
        pw = pw * iz
        tk = a * pw
        at = abs(tk)
        if at == 0.0:
            ok = True
            break
        if at > prev and k > 2:
            ok = prev <= 1e-15 * abs(p)
            break
        p += tk
        pd += -k * tk / z
        prev = at
        if at <= 1e-17 * abs(p):
            ok = True
            break
    omega = z - (0.5 * nu + 0.25) * PI
    e = cmath.exp(complex(0.0, sg) * omega)
    pref = cmath.sqrt(2.0 / (PI * z))
    h = pref * e * p
    hd = pref * e * ((complex(0.0, sg) - 0.5 / z) * p + pd)
    return h, hd, ok


@njit(cache=True)
def hankel_large(nu, z, which):
    """Hankel function for large |z| where the direct expansion is valid in arg z."""
    if abs(nu) ** 2 <= 4.0 * abs(z):
        return hankel_asym(nu, z, which)
    if nu.real < 0.0:
        h, hd, ok = hankel_large(-nu, z, which)
        sg = 1.0 if which == 1 else -1.0
        f = exp_ipi(-sg * nu)
        return f * h, f * hd, ok
    m = int(round(nu.real))
    nu0 = nu - m
    h0, h0d, ok0 = hankel_asym(nu0, z, which)
    if m == 0:
        return h0, h0d, ok0
    h1, h1d, ok1 = hankel_asym(nu0 + 1.0, z, which)
    hm1 = h0
    hk = h1
    for k in range(1, m):
        hn = 2.0 * (nu0 + k) / z * hk - hm1
        hm1 = hk
        hk = hn
    hd = hm1 - nu / z * hk
    return hk, hd, ok0 and ok1


@njit(cache=True)
def hankel_outer(nu, z, which):
    """Hankel function for |z| > R anywhere in the cut plane."""
    ang = math.atan2(z.imag, z.real)
    if which == 1:
        if ang >= -0.5 * PI:
            return hankel_large(nu, z, 1)
        w = -z
        a, ad, oka = hankel_large(nu, w, 1)
        b, bd, okb = hankel_large(nu, w, 2)
        c = 2.0 * sincospi(nu)[1]
        f = exp_ipi(-nu)
        return c * a + f * b, -(c * ad + f * bd), oka and okb
    if ang <= 0.5 * PI:
        return hankel_large(nu, z, 2)
    w = -z
    a, ad, oka = hankel_large(nu, w, 2)
    b, bd, okb = hankel_large(nu, w, 1)
    c = 2.0 * sincospi(nu)[1]
    f = exp_ipi(nu)
    return c * a + f * b, -(c * ad + f * bd), oka and okb


@njit(cache=True)
def radius(nu):
    return max(SERIES_RADIUS, abs(nu))


@njit(cache=True)
def j_at_zero(nu):
    """J_nu(0), J_nu'(0); status 3 means the value exists but the derivative does not."""
    isint, n = near_int(nu)
    if isint:
        if n == 0:
            return complex(1.0, 0.0), 0j, 0
        if n == 1 or n == -1:
            return 0j, complex(0.5 * n, 0.0), 0
        return 0j, 0j, 0
    if nu.real > 1.0:
        return 0j, 0j, 0
    if nu.real > 0.0:
        return 0j, complex(math.nan, math.nan), 3
    return 0j, 0j, 1


@njit(cache=True)
def j_small(nu, z):
    isint, n = near_int(nu)
    if isint and n < 0:
        j, jd, ok = j_series(complex(-n, 0.0), z)
        sg = -1.0 if (n % 2) else 1.0
        return sg * j, sg * jd, ok
    if isint:
        return j_series(complex(n, 0.0), z)
    return j_series(nu, z)


@njit(cache=True)
def j_any(nu, z):
    if z.real == 0.0 and z.imag == 0.0:
        v, d, st = j_at_zero(nu)
        return v, d, st == 0
    az = abs(z)
    if az <= radius(nu) or az - abs(z.imag) <= SERIES_GAIN:
        return j_small(nu, z)
    if z.real >= 0.0:
        a, ad, oka = hankel_large(nu, z, 1)
        b, bd, okb = hankel_large(nu, z, 2)
        return 0.5 * (a + b), 0.5 * (ad + bd), oka and okb
    sg = 1.0 if z.imag >= 0.0 else -1.0
    f = exp_ipi(sg * nu)
    j, jd, ok = j_any(nu, -z)
    return f * j, -f * jd, ok


@njit(cache=True)
def jy_axis(nu, z):
    """J, J', Y, Y' near the real axis inside the series radius."""
    isint, n = near_int(nu)
    if isint:
        m = abs(n)
        j, jd, ok1 = j_series(complex(m, 0.0), z)
        y, yd, ok2 = y_int_series(m, z, j, jd)
        if n < 0 and (m % 2):
            return -j, -jd, -y, -yd, ok1 and ok2
        return j, jd, y, yd, ok1 and ok2
    j, jd, ok1 = j_series(nu, z)
    jm, jmd, ok2 = j_series(-nu, z)
    s, c = sincospi(nu)
    return j, jd, (j * c - jm) / s, (jd * c - jmd) / s, ok1 and ok2


@njit(cache=True)
def cylinder(nu, z):
    """(J, J', Y, Y', H1, H1', H2, H2', ok) for z != 0."""
    if abs(z) <= radius(nu):
        if abs(z.imag) <= AXIS_BAND or abs(nu) > KTRAP_MAX_ORDER:
            j, jd, y, yd, ok = jy_axis(nu, z)
            return j, jd, y, yd, j + 1j * y, jd + 1j * yd, j - 1j * y, jd - 1j * yd, ok
        j, jd, ok1 = j_small(nu, z)
        if z.imag > 0.0:
            k, kd, ok2 = k_trapezoid(nu, complex(z.imag, -z.real))
            c = -2j / PI * exp_ipi(-0.5 * nu)
            h1 = c * k
            h1d = c * kd * (-1j)
            h2 = 2.0 * j - h1
            h2d = 2.0 * jd - h1d
        else:
            k, kd, ok2 = k_trapezoid(nu, complex(-z.imag, z.real))
            c = 2j / PI * exp_ipi(0.5 * nu)
            h2 = c * k
            h2d = c * kd * 1j
            h1 = 2.0 * j - h2
            h1d = 2.0 * jd - h2d
        y = -0.5j * (h1 - h2)
        yd = -0.5j * (h1d - h2d)
        return j, jd, y, yd, h1, h1d, h2, h2d, ok1 and ok2
    h1, h1d, ok1 = hankel_outer(nu, z, 1)
    h2, h2d, ok2 = hankel_outer(nu, z, 2)
    j = 0.5 * (h1 + h2)
    jd = 0.5 * (h1d + h2d)
    y = -0.5j * (h1 - h2)
    yd = -0.5j * (h1d - h2d)
    return j, jd, y, yd, h1, h1d, h2, h2d, ok1 and ok2


@njit(cache=True)
def hankel_any(nu, z, which):
    if abs(z) > radius(nu):
        return hankel_outer(nu, z, which)
    r = cylinder(nu, z)
    if which == 1:
        return r[4], r[5], r[8]
    return r[6], r[7], r[8]


@njit(cache=True)
def _modified_i(nu, z):
    if z.real < 0.0:
        sg = 1.0 if z.imag >= 0.0 else -1.0
        v, d, ok = _modified_i(nu, -z)
        f = exp_ipi(sg * nu)
        return f * v, -f * d, ok
    f = exp_ipi(-0.5 * nu)
    jv, jd, ok = j_any(nu, complex(-z.imag, z.real))
    return f * jv, f * 1j * jd, ok


@njit(cache=True)
def _modified_k_right(nu, z):
    c = 0.5j * PI * exp_ipi(0.5 * nu)
    h, hd, ok = hankel_any(nu, complex(-z.imag, z.real), 1)
    return c * h, c * 1j * hd, ok


@njit(cache=True)
def evaluate(kind, nu, z):
    z = complex(z.real, z.imag + 0.0)
    is_zero = z.real == 0.0 and z.imag == 0.0
    if kind == 0:
        if is_zero:
            return j_at_zero(nu)
        v, d, ok = j_any(nu, z)
    elif kind <= 3:
        if is_zero:
            return 0j, 0j, 1
        if kind == 1:
            r = cylinder(nu, z)
            v, d, ok = r[2], r[3], r[8]
        else:
            v, d, ok = hankel_any(nu, z, kind - 1)
    elif kind == 4:
        if is_zero:
            v, d, st = j_at_zero(nu)
            return v, abs(d), st
        v, d, ok = _modified_i(nu, z)
    else:
        if is_zero:
            return 0j, 0j, 1
        if z.real >= 0.0:
            v, d, ok = _modified_k_right(nu, z)
        elif abs(z) <= radius(nu) or abs(nu) ** 2 <= 4.0 * abs(z):
            ang = math.atan2(z.imag, z.real)
            if ang <= 0.5 * PI:
                v, d, ok = _modified_k_right(nu, z)
            else:
                c = -0.5j * PI * exp_ipi(-0.5 * nu)
                h, hd, ok = hankel_any(nu, complex(z.imag, -z.real), 2)
                v, d = c * h, -1j * c * hd
        else:
            sg = 1.0 if z.imag >= 0.0 else -1.0
            kv, kd, ok1 = _modified_k_right(nu, -z)
            iv, idd, ok2 = _modified_i(nu, -z)
            f = exp_ipi(-sg * nu)
            v = f * kv - sg * 1j * PI * iv
            d = -(f * kd - sg * 1j * PI * idd)
            ok = ok1 and ok2
    if not ok or not (math.isfinite(v.real) and math.isfinite(v.imag) and math.isfinite(d.real) and math.isfinite(d.imag)):
        return v, d, 2
    return v, d, 0


@njit(cache=True)
def evaluate_array(kind, nu, zs, vals, ders, status):
    for i in range(zs.shape[0]):
        v, d, st = evaluate(kind, nu, zs[i])
        vals[i] = v
        ders[i] = d
        status[i] = st
