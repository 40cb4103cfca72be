"""Cone angles of the Einstein family V_alpha(u) = u^2 - 1 + alpha / u^(2n).

The largest root u_alpha of V_alpha is where the circle fibre collapses; the
transverse metric there has cone angle 2*pi*c_alpha with
c_alpha = u_alpha^2 - n*alpha/u_alpha^(2n) = (n+1)*u_alpha^2 - n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import bisect

from .errors import DomainError, NumericsError, ParameterError

ROOT_XTOL = 1e-15
QUADRATURE_ORDER = 48


def v_critical(n: int) -> float:
    """sqrt(n/(n+1)): the maximiser of (1-u^2) u^(2n) on u > 0."""
    return math.sqrt(n / (n + 1))


def alpha_max(n: int) -> float:
    return v_critical(n) ** (2 * n) / (n + 1)


def root_function(u: float, alpha: float, n: int) -> float:
    """(1 - u^2) u^(2n) - alpha; its roots are the roots of V_alpha."""
    return (1.0 - u * u) * u ** (2 * n) - alpha


def _check_n(n):
    if int(n) != n or n < 2:
        raise ParameterError(f"complex dimension n must be an integer >= 2, got {n!r}")


def largest_root(alpha: float, n: int) -> float:
    """Largest root u_alpha of V_alpha, by bisection on a guaranteed bracket."""
    _check_n(n)
    amax = alpha_max(n)
    if alpha > amax:
        raise ParameterError(
            f"alpha={alpha!r} > alpha_max(n={n})={amax!r}: V_alpha has no positive root"
        )
    if alpha == 0.0:
        return 1.0
    if alpha == amax:
        return v_critical(n)
    if alpha > 0.0:
        lo, hi = v_critical(n), 1.0
    else:
        lo, hi = 1.0, 2.0
        while root_function(hi, alpha, n) > 0.0:
            lo, hi = hi, 2.0 * hi
    return bisect(root_function, lo, hi, args=(alpha, n), xtol=ROOT_XTOL, maxiter=400)


@dataclass(frozen=True)
class ConeData:
    n: int
    alpha: float
    v: float
    alpha_max: float
    u_alpha: float
    c_alpha: float
    cone_angle: float


def cone_data(alpha: float, n: int) -> ConeData:
    u = largest_root(alpha, n)
    c = u * u - n * alpha / u ** (2 * n)
    return ConeData(
        n=n,
        alpha=alpha,
        v=v_critical(n),
        alpha_max=alpha_max(n),
        u_alpha=u,
        c_alpha=c,
        cone_angle=2.0 * math.pi * c,
    )


def alpha_for_cone_angle(n: int, *, d: int | None = None, c: float | None = None) -> float:
    """The alpha whose cone angle is 2*pi*c (c = 1/d for a degree-d cover).

    Closed form: u^2 = (n + c)/(n + 1) and alpha = (1 - u^2) u^(2n).
    """
    _check_n(n)
    if (d is None) == (c is None):
        raise ParameterError("give exactly one of d or c")
    if d is not None:
        if int(d) != d or d < 1:
            raise ParameterError(f"degree d must be a positive integer, got {d!r}")
        c = 1.0 / d
    if not 0.0 < c <= 1.0:
        raise ParameterError(f"cone fraction c must lie in (0, 1], got {c!r}")
    u2 = (n + c) / (n + 1)
    return (1.0 - u2) * u2**n


def alpha_for_degree_exact(n: int, d: int) -> Fraction:
    """Exact rational alpha_d, e.g. 343/4096 for (n=3, d=2)."""
    u2 = Fraction(n * d + 1, d * (n + 1))
    return (1 - u2) * u2**n


def _v_increment(t, u_a, alpha, n):
    # V_alpha(u_a + t) - V_alpha(u_a), free of the cancellation in V_alpha(u_a) ~ 0
    power_diff = u_a ** (-2 * n) * np.expm1(-2 * n * np.log1p(t / u_a))
    return t * (2.0 * u_a + t) + alpha * power_diff


def cone_angle_numeric(alpha: float, n: int, offset: float = 1e-6) -> float:
    """Circumference / (2*pi * radius) of the small circle at u = u_alpha + offset.

    The radial distance s(u) = int_{u_alpha}^{u} dt / sqrt(V(t)) has an
    integrable endpoint singularity, removed by t = u_alpha + tau^2 before a
    fixed-order Gauss-Legendre rule.  The estimate tends to c_alpha as the
    offset shrinks (error O(offset)).
    """
    _check_n(n)
    amax = alpha_max(n)
    if not 0.0 < alpha < amax:
        raise ParameterError(f"cone angles are estimated for alpha in (0, {amax!r}), got {alpha!r}")
    if offset <= 0.0:
        raise DomainError("cone_angle_numeric", offset, "offset must be positive")
    u_a = largest_root(alpha, n)
    tau_max = math.sqrt(offset)
    nodes, weights = np.polynomial.legendre.leggauss(QUADRATURE_ORDER)
    tau = 0.5 * tau_max * (nodes + 1.0)
    ratio = _v_increment(tau * tau, u_a, alpha, n) / (tau * tau)
    if not np.all(np.isfinite(ratio)) or np.any(ratio <= 0.0):
        raise NumericsError("non-positive V_alpha inside the quadrature interval")
    s = 0.5 * tau_max * float(np.sum(weights * 2.0 / np.sqrt(ratio)))
    v_end = float(_v_increment(offset, u_a, alpha, n))
    estimate = (u_a + offset) * math.sqrt(v_end) / s
    if not math.isfinite(estimate):
        raise NumericsError("cone-angle quadrature produced a non-finite value")
    return estimate


def metric_deviation(alpha: float, n: int, u: float) -> tuple[float, float]:
    """Frame-slot deviation of lambda_alpha from the complex hyperbolic metric.

    Both metrics share the horizontal block; in the c_n-orthonormal frame the
    theta slot differs by E/(u^2-1) and the u slot by (u^2-1)/V - 1, where
    E = alpha/u^(2n).  Returns ``(measured, bound)`` with bound 2|alpha|/u^(2n).
    Only defined for u >= 1.5.
    """
    if u < 1.5:
        raise DomainError("metric_deviation", u, f"u={u!r} below the u >= 1.5 convention")
    excess = alpha / u ** (2 * n)
    base = u * u - 1.0
    measured = max(abs(excess) / base, abs(base / (base + excess) - 1.0))
    return measured, 2.0 * abs(alpha) / u ** (2 * n)
