"""Warping functions V(u) for the metric u^2 c_{n-1} + u^2 V dtheta^2 + du^2 / V.

Every profile is written as ``V(u) = u^2 - 1 + E(u)``: the plain complex
hyperbolic profile has E = 0, the Einstein family E = alpha / u^(2n).
Keeping the excess E explicit lets Einstein deficits be evaluated without
cancelling against the O(u^2) background.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import jets
from .cone import alpha_max, largest_root
from .errors import DegenerateError, DomainError, ParameterError
from .jets import Jet2, lift

RK4_STEP = 1e-3
RK4_RMAX = 5.0


class WarpProfile:
    """Base class: subclasses implement :meth:`excess` on jets."""

    label = "profile"
    domain_lower = 1.0

    def excess(self, u: Jet2) -> Jet2:
        raise NotImplementedError

    def jet(self, u: Jet2) -> Jet2:
        """V as a jet, given u as a jet in the base coordinates."""
        return u * u - 1.0 + self.excess(u)

    def warp_jet(self, u: Jet2) -> Jet2:
        """W = sqrt(V)."""
        return jets.sqrt(self.jet(u))

    def evaluate(self, u: float) -> tuple[float, float, float]:
        """(V, V', V'') at u."""
        j = self.jet(lift(u, "u"))
        return float(j.value), float(j.d_u), float(j.d_u_u)

    def evaluate_excess(self, u: float) -> tuple[float, float, float]:
        j = self.excess(lift(u, "u"))
        return float(j.value), float(j.d_u), float(j.d_u_u)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"


class PlainHyperbolic(WarpProfile):
    """V = u^2 - 1, the complex hyperbolic metric itself."""

    label = "u^2-1"

    def excess(self, u):
        return Jet2.constant(0.0 * u.value)


@dataclass(repr=False)
class CustomWarp(WarpProfile):
    """User-supplied V, given as a function on jets (for testing)."""

    fn: Callable[[Jet2], Jet2]
    domain_lower: float = 0.0
    label: str = "custom"

    def jet(self, u):
        return self.fn(u)

    def excess(self, u):
        return self.fn(u) - (u * u - 1.0)


@dataclass(repr=False)
class EinsteinWarp(WarpProfile):
    n: int
    alpha: float
    u_alpha: float = field(init=False)

    def __post_init__(self):
        self.u_alpha = largest_root(self.alpha, self.n)
        self.domain_lower = self.u_alpha
        self.label = f"V_alpha(n={self.n}, alpha={self.alpha!r})"

    def excess(self, u):
        return self.alpha * jets.power(u, -2 * self.n)


def einstein_profile(n: int, alpha: float) -> EinsteinWarp:
    """V_alpha(u) = u^2 - 1 + alpha u^(-2n), the Einstein solutions with constant -2(n+1).

    Raises ParameterError for alpha > alpha_max(n), where V_alpha has no
    positive root and the model has no degeneration locus.
    """
    return EinsteinWarp(n, alpha)


def ode_residual(profile: WarpProfile, n: int, u: float) -> float:
    """V' + (2n/u) V - (2n+2) u + 2n/u; zero exactly for the Einstein family.

    Evaluated as E' + 2n E / u with V = u^2 - 1 + E, the same expression
    with the u^2 - 1 part cancelled algebraically.
    """
    E, dE, _ = profile.evaluate_excess(u)
    return dE + 2 * n * E / u


def solve_einstein_from_condition(n: int, u0: float, V0: float) -> EinsteinWarp:
    """The family member through (u0, V0), via the integrating factor u^(2n)."""
    if u0 <= 0.0:
        raise DomainError("solve_einstein_from_condition", u0, "u0 must be positive")
    alpha = (V0 - u0 * u0 + 1.0) * u0 ** (2 * n)
    amax = alpha_max(n)
    if alpha > amax:
        raise ParameterError(f"alpha={alpha!r} exceeds alpha_max(n={n})={amax!r}")
    return einstein_profile(n, alpha)


@dataclass
class RadialTrajectory:
    """u = f(r) sampled on a uniform r-grid, with f' and f''."""

    r: np.ndarray
    f: np.ndarray
    f1: np.ndarray
    f2: np.ndarray

    def __len__(self):
        return len(self.r)

    def __iter__(self):
        return iter(zip(self.r, self.f, self.f1, self.f2))


def radial_profile(profile: EinsteinWarp, r_max: float = RK4_RMAX, step: float = RK4_STEP) -> RadialTrajectory:
    """Integrate f'' = V'(f)/2 from f(0) = u_alpha, f'(0) = 0 with classical RK4.

    The second-order form avoids the non-Lipschitz start of f' = sqrt(V(f)).
    """
    if step <= 0.0:
        raise DomainError("radial_profile", step, "step must be positive")
    if profile.alpha == alpha_max(profile.n):
        raise DegenerateError("alpha = alpha_max: V'(u_alpha) = 0, the solution is constant f = v")

    def accel(x):
        return 0.5 * profile.evaluate(x)[1]

    steps = int(round(r_max / step))
    r = step * np.arange(steps + 1)
    f = np.empty(steps + 1)
    f1 = np.empty(steps + 1)
    f[0], f1[0] = profile.u_alpha, 0.0
    x, p = f[0], 0.0
    h = step
    for i in range(steps):
        k1x, k1p = p, accel(x)
        k2x, k2p = p + 0.5 * h * k1p, accel(x + 0.5 * h * k1x)
        k3x, k3p = p + 0.5 * h * k2p, accel(x + 0.5 * h * k2x)
        k4x, k4p = p + h * k3p, accel(x + h * k3x)
        x += h * (k1x + 2 * k2x + 2 * k3x + k4x) / 6.0
        p += h * (k1p + 2 * k2p + 2 * k3p + k4p) / 6.0
        f[i + 1], f1[i + 1] = x, p
    f2 = np.array([accel(x) for x in f])
    return RadialTrajectory(r, f, f1, f2)


def gh_ode_residual(f: float, f1: float, f2: float, n: int) -> float:
    """f''/f + n f'^2/f^2 + n/f^2 - (n+1)."""
    if f <= 0.0:
        raise DomainError("gh_ode_residual", f, "f must be positive")
    return f2 / f + n * f1 * f1 / (f * f) + n / (f * f) - (n + 1)


def energy_defect(traj: RadialTrajectory, profile: WarpProfile) -> np.ndarray:
    """(f')^2 - V(f) along a trajectory; conserved (= 0) for exact solutions."""
    return np.array([p * p - profile.evaluate(x)[0] for x, p in zip(traj.f, traj.f1)])


def is_positive_on(profile: WarpProfile, us) -> bool:
    return all(profile.evaluate(float(u))[0] > 0.0 for u in us)
