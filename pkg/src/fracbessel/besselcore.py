"""Reference evaluation of J, Y, H1, H2, I, K for complex order and argument.

The heavy lifting happens in compiled kernels (:mod:`fracbessel._kernels`).
This module adds the public types, vectorised entry points, error mapping
and arguments carrying extra turns (``ComplexValue.winding``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .complexmath import ComplexValue
from .errors import ConvergenceError, DomainError


class BesselKind(str, Enum):
    J = "J"
    Y = "Y"
    H1 = "H1"
    H2 = "H2"
    I = "I"  # noqa: E741
    K = "K"

    @classmethod
    def parse(cls, value) -> "BesselKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"unknown Bessel kind {value!r}") from None

    @property
    def code(self) -> int:
        return _CODES[self]


_CODES = {BesselKind.J: 0, BesselKind.Y: 1, BesselKind.H1: 2, BesselKind.H2: 3, BesselKind.I: 4, BesselKind.K: 5}


@dataclass(frozen=True)
class BesselPoint:
    kind: BesselKind
    nu: ComplexValue | complex | float
    z: ComplexValue | complex | float

    def __post_init__(self):
        object.__setattr__(self, "kind", BesselKind.parse(self.kind))


def _raise_for(status: np.ndarray, kind: BesselKind, nu: complex, z, want_der: bool) -> None:
    if status.size == 0:
        return
    bad = status == 1
    if want_der:
        bad |= status == 3
    if bad.any():
        i = int(np.argmax(bad))
        raise DomainError(f"{kind.value}_{nu} is singular at z = {np.ravel(z)[i]}")
    if (status == 2).any():
        i = int(np.argmax(status == 2))
        raise ConvergenceError(f"{kind.value}_{nu} failed to converge at z = {np.ravel(z)[i]}")


def evaluate(kind, nu, z, derivative: bool = False) -> np.ndarray | complex:
    """Principal-branch values (or z-derivatives) on an array of arguments."""
    kind = BesselKind.parse(kind)
    nu = complex(nu)
    zarr = np.asarray(z, dtype=complex)
    flat = np.ascontiguousarray(zarr.ravel())
    vals = np.empty(flat.shape, dtype=complex)
    ders = np.empty(flat.shape, dtype=complex)
    status = np.empty(flat.shape, dtype=np.int64)
    _kernels.evaluate_array(kind.code, nu, flat, vals, ders, status)
    _raise_for(status, kind, nu, flat, derivative)
    out = (ders if derivative else vals).reshape(zarr.shape)
    if zarr.ndim == 0:
        return complex(out[()])
    return out


def _sin_ratio(m: int, nu: complex) -> complex:
    """sin(m nu pi) / sin(nu pi) with its limit at integer nu."""
    isint, n = _kernels.near_int(nu)
    if isint:
        return m * (-1.0) ** ((m - 1) * n)
    return cmath.sin(m * nu * math.pi) / cmath.sin(nu * math.pi)


def _continued(kind: BesselKind, nu: complex, z0: complex, m: int, derivative: bool) -> complex:
    """Value at z0 * e^{m pi i} for even m (argument carried past the cut)."""

    def ev(k):
        return evaluate(k, nu, z0, derivative)

    e = cmath.exp
    ipi = 1j * math.pi
    if kind in (BesselKind.J, BesselKind.I):
        return e(m * ipi * nu) * ev(kind)
    if kind == BesselKind.K:
        return e(-m * ipi * nu) * ev(BesselKind.K) - ipi * _sin_ratio(m, nu) * ev(BesselKind.I)
    h1, h2 = ev(BesselKind.H1), ev(BesselKind.H2)
    s1 = _sin_ratio(m - 1, nu)
    g1 = -s1 * h1 - e(-ipi * nu) * _sin_ratio(m, nu) * h2
    g2 = _sin_ratio(m + 1, nu) * h2 + e(ipi * nu) * _sin_ratio(m, nu) * h1
    if kind == BesselKind.H1:
        return g1
    if kind == BesselKind.H2:
        return g2
    return (g1 - g2) / 2j


def _point_value(p: BesselPoint, derivative: bool) -> complex:
    nu = complex(p.nu)
    z = ComplexValue.of(p.z)
    if z.winding == 0:
        return evaluate(p.kind, nu, complex(z), derivative)
    return _continued(p.kind, nu, complex(z), 2 * z.winding, derivative)


def bessel(p: BesselPoint) -> complex:
    """Z_nu(z) for the kind, order and argument in ``p``."""
    return _point_value(p, False)


def bessel_dz(p: BesselPoint) -> complex:
    """dZ_nu/dz from the term-wise differentiated expansions."""
    return _point_value(p, True)


def J(nu, z):
    return evaluate(BesselKind.J, nu, z)


def Y(nu, z):
    return evaluate(BesselKind.Y, nu, z)


def H1(nu, z):
    return evaluate(BesselKind.H1, nu, z)


def H2(nu, z):
    return evaluate(BesselKind.H2, nu, z)


def I(nu, z):  # noqa: E743
    return evaluate(BesselKind.I, nu, z)


def K(nu, z):
    return evaluate(BesselKind.K, nu, z)
