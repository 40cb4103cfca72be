"""Second-order forward-mode jets over the base coordinates (sigma, u).

A :class:`Jet2` carries a value together with its first and second partial
derivatives in ``sigma`` and ``u``.  The six slots may be Python floats or
numpy arrays of a common shape, so the same arithmetic serves scalar
coefficients and whole coefficient tables.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import DomainError

SLOTS = ("value", "d_sigma", "d_u", "d_sigma_sigma", "d_sigma_u", "d_u_u")


class Jet2:
    __slots__ = SLOTS
    # make numpy scalars/arrays defer to Jet2's reflected operators
    __array_ufunc__ = None

    def __init__(self, value, d_sigma=0.0, d_u=0.0, d_sigma_sigma=0.0, d_sigma_u=0.0, d_u_u=0.0):
        self.value = value
        self.d_sigma = d_sigma
        self.d_u = d_u
        self.d_sigma_sigma = d_sigma_sigma
        self.d_sigma_u = d_sigma_u
        self.d_u_u = d_u_u

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, value) -> "Jet2":
        z = np.zeros_like(value) if isinstance(value, np.ndarray) else 0.0
        return cls(value, z, z, z, z, z)

    @classmethod
    def zeros(cls, shape) -> "Jet2":
        return cls(*(np.zeros(shape) for _ in SLOTS))

    def slots(self) -> tuple:
        return tuple(getattr(self, s) for s in SLOTS)

    def map(self, fn: Callable) -> "Jet2":
        """Apply a linear map slot by slot (transpose, indexing, sums...)."""
        return Jet2(*(fn(s) for s in self.slots()))

    def __getitem__(self, idx) -> "Jet2":
        return self.map(lambda s: s[idx])

    def __setitem__(self, idx, other) -> None:
        other = _as_jet(other)
        for name in SLOTS:
            getattr(self, name)[idx] = getattr(other, name)

    def __repr__(self) -> str:
        body = ", ".join(f"{s}={getattr(self, s)!r}" for s in SLOTS)
        return f"Jet2({body})"

    def derivative_u(self) -> "Jet2":
        """Jet of the u-partial.

        Only the value and first-order slots are known; the second-order
        slots would need third derivatives and are set to NaN.
        """
        nan = np.full_like(self.value, np.nan) if isinstance(self.value, np.ndarray) else math.nan
        return Jet2(self.d_u, self.d_sigma_u, self.d_u_u, nan, nan, nan)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "Jet2":
        return self.map(lambda s: -s)

    def __add__(self, other) -> "Jet2":
        if not isinstance(other, Jet2):
            return Jet2(self.value + other, *self.slots()[1:])
        return Jet2(*(a + b for a, b in zip(self.slots(), other.slots())))

    __radd__ = __add__

    def __sub__(self, other) -> "Jet2":
        return self + (-other)

    def __rsub__(self, other) -> "Jet2":
        return (-self) + other

    def __mul__(self, other) -> "Jet2":
        if not isinstance(other, Jet2):
            return self.map(lambda s: s * other)
        f, g = self, other
        return Jet2(
            f.value * g.value,
            f.d_sigma * g.value + f.value * g.d_sigma,
            f.d_u * g.value + f.value * g.d_u,
            f.d_sigma_sigma * g.value + 2.0 * f.d_sigma * g.d_sigma + f.value * g.d_sigma_sigma,
            f.d_sigma_u * g.value + f.d_sigma * g.d_u + f.d_u * g.d_sigma + f.value * g.d_sigma_u,
            f.d_u_u * g.value + 2.0 * f.d_u * g.d_u + f.value * g.d_u_u,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet2":
        if not isinstance(other, Jet2):
            return self.map(lambda s: s / other)
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "Jet2":
        return self.reciprocal() * other

    def __pow__(self, k) -> "Jet2":
        return power(self, k)

    def reciprocal(self) -> "Jet2":
        v = self.value
        return self.compose(1.0 / v, -1.0 / v**2, 2.0 / v**3)

    def compose(self, f0, f1, f2) -> "Jet2":
        """Chain rule through second order for a scalar function with
        value ``f0`` and derivatives ``f1``, ``f2`` at ``self.value``."""
        x = self
        return Jet2(
            f0,
            f1 * x.d_sigma,
            f1 * x.d_u,
            f2 * x.d_sigma * x.d_sigma + f1 * x.d_sigma_sigma,
            f2 * x.d_sigma * x.d_u + f1 * x.d_sigma_u,
            f2 * x.d_u * x.d_u + f1 * x.d_u_u,
        )


def _as_jet(x) -> Jet2:
    return x if isinstance(x, Jet2) else Jet2.constant(x)


def lift(value, which: str = "constant") -> Jet2:
    """Seed jet: unit first derivative in ``which`` ('sigma', 'u' or 'constant')."""
    if which == "sigma":
        return Jet2(value, 1.0, 0.0, 0.0, 0.0, 0.0)
    if which == "u":
        return Jet2(value, 0.0, 1.0, 0.0, 0.0, 0.0)
    if which == "constant":
        return Jet2(value)
    raise ValueError(f"unknown coordinate {which!r}")


def _check(fn, ok, value):
    if not np.all(ok):
        bad = value if np.ndim(value) == 0 else np.asarray(value)[~np.asarray(ok)].flat[0]
        raise DomainError(fn, float(bad))


def cosh(x: Jet2) -> Jet2:
    c, s = np.cosh(x.value), np.sinh(x.value)
    return x.compose(c, s, c)


def sinh(x: Jet2) -> Jet2:
    c, s = np.cosh(x.value), np.sinh(x.value)
    return x.compose(s, c, s)


def exp(x: Jet2) -> Jet2:
    e = np.exp(x.value)
    return x.compose(e, e, e)


def sqrt(x: Jet2) -> Jet2:
    _check("sqrt", np.asarray(x.value) > 0, x.value)
    r = np.sqrt(x.value)
    return x.compose(r, 0.5 / r, -0.25 / (r * x.value))


def arccosh(x: Jet2) -> Jet2:
    _check("arccosh", np.asarray(x.value) > 1, x.value)
    v = x.value
    q = np.sqrt(v * v - 1.0)
    return x.compose(np.arccosh(v), 1.0 / q, -v / q**3)


def power(x: Jet2, k) -> Jet2:
    v = x.value
    if not float(k).is_integer():
        _check(f"pow({k})", np.asarray(v) > 0, v)
    k = float(k)
    if k == 0.0:
        return Jet2.constant(np.ones_like(v) if isinstance(v, np.ndarray) else 1.0)
    return x.compose(v**k, k * v ** (k - 1.0), k * (k - 1.0) * v ** (k - 2.0))


_ELEMENTARY = {"cosh": cosh, "sinh": sinh, "sqrt": sqrt, "exp": exp, "arccosh": arccosh}


def elementary(fn: str, x: Jet2, k=None) -> Jet2:
    """Apply a named elementary function (``'pow'`` needs exponent ``k``)."""
    if fn == "pow":
        if k is None:
            raise ValueError("pow needs an exponent k")
        return power(x, k)
    try:
        return _ELEMENTARY[fn](x)
    except KeyError:
        raise ValueError(f"unknown elementary function {fn!r}") from None
