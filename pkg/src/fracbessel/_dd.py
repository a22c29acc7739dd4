"""Double-double (about 32 digit) complex arithmetic for the ascending series kernels.

A real double-double is a pair (hi, lo); a complex one is (rh, rl, ih, il).
"""

from numba import njit

_SPLIT = 134217729.0  # 2**27 + 1


@njit(cache=True, inline="always")
def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit(cache=True, inline="always")
def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


@njit(cache=True, inline="always")
def _split(a):
    t = _SPLIT * a
    hi = t - (t - a)
    return hi, a - hi


@njit(cache=True, inline="always")
def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@njit(cache=True, inline="always")
def dd_add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    t, f = two_sum(al, bl)
    e += t
    s, e = quick_two_sum(s, e)
    e += f
    return quick_two_sum(s, e)


@njit(cache=True, inline="always")
def dd_mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    e += ah * bl + al * bh
    return quick_two_sum(p, e)


@njit(cache=True, inline="always")
def dd_mul_d(ah, al, b):
    p, e = two_prod(ah, b)
    e += al * b
    return quick_two_sum(p, e)


@njit(cache=True, inline="always")
def dd_div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = dd_mul_d(bh, bl, q1)
    rh, rl = dd_add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = dd_mul_d(bh, bl, q2)
    rh, rl = dd_add(rh, rl, -ph, -pl)
    q3 = rh / bh
    q1, q2 = quick_two_sum(q1, q2)
    return dd_add(q1, q2, q3, 0.0)


@njit(cache=True, inline="always")
def cdd_add(a, b):
    rh, rl = dd_add(a[0], a[1], b[0], b[1])
    ih, il = dd_add(a[2], a[3], b[2], b[3])
    return (rh, rl, ih, il)


@njit(cache=True, inline="always")
def cdd_mul(a, b):
    p1h, p1l = dd_mul(a[0], a[1], b[0], b[1])
    p2h, p2l = dd_mul(a[2], a[3], b[2], b[3])
    p3h, p3l = dd_mul(a[0], a[1], b[2], b[3])
    p4h, p4l = dd_mul(a[2], a[3], b[0], b[1])
    rh, rl = dd_add(p1h, p1l, -p2h, -p2l)
    ih, il = dd_add(p3h, p3l, p4h, p4l)
    return (rh, rl, ih, il)


@njit(cache=True, inline="always")
def cdd_div(a, b):
    n1h, n1l = dd_mul(b[0], b[1], b[0], b[1])
    n2h, n2l = dd_mul(b[2], b[3], b[2], b[3])
    nh, nl = dd_add(n1h, n1l, n2h, n2l)
    num = cdd_mul(a, (b[0], b[1], -b[2], -b[3]))
    rh, rl = dd_div(num[0], num[1], nh, nl)
    ih, il = dd_div(num[2], num[3], nh, nl)
    return (rh, rl, ih, il)


@njit(cache=True, inline="always")
def cdd_from(z):
    return (z.real, 0.0, z.imag, 0.0)


@njit(cache=True, inline="always")
def cdd_to(a):
    return complex(a[0] + a[1], a[2] + a[3])


@njit(cache=True, inline="always")
def cdd_abs_hi(a):
    return abs(complex(a[0], a[2]))
