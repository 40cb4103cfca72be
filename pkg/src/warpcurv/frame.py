"""The n = 3 orthonormal frame Y1..Y6 over the base coordinates (sigma, u).

Y1..Y4 span the horizontal distribution (a rescaled complex hyperbolic plane
in polar coordinates about a totally real hyperbolic plane, radius sigma),
Y5 = theta/(uW) spans the circle fibre and Y6 = W d/du the radial direction.
The frame is described entirely by its structure functions

    [Y_i, Y_j] = sum_k c[k, i, j] Y_k,

stored 0-based (index 0 is Y1) as a :class:`~warpcurv.jets.Jet2` of
(6, 6, 6) arrays.  Coefficients depend on (sigma, u) only, and only Y4 and
Y6 differentiate such functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np

from . import jets
from .jets import Jet2, lift
from .warp import WarpProfile

DIM = 6

# 1-based (i, j) -> nonzero k's; every other bracket vanishes
BRACKET_PATTERN = {
    (1, 2): (3, 5),
    (1, 3): (2,),
    (1, 4): (1,),
    (1, 6): (1,),
    (2, 3): (1,),
    (2, 4): (2,),
    (2, 6): (2,),
    (3, 4): (3, 5),
    (3, 6): (3,),
    (4, 6): (4,),
    (5, 6): (5,),
}


@dataclass(frozen=True)
class FramePoint:
    sigma: float
    u: float


@dataclass
class BracketTable:
    point: FramePoint
    c: Jet2  # c[k, i, j], 0-based
    W: float

    def coefficient(self, k: int, i: int, j: int) -> float:
        """Coefficient of Y_k in [Y_i, Y_j], 1-based as in the frame labels."""
        return float(self.c.value[k - 1, i - 1, j - 1])


def hyperbolic_helpers(sigma) -> tuple[Jet2, Jet2, Jet2]:
    """a = cosh(sigma), b = sinh(sigma), c = cosh(2 sigma) as jets in sigma."""
    s = sigma if isinstance(sigma, Jet2) else lift(sigma, "sigma")
    return jets.cosh(s), jets.sinh(s), jets.cosh(2.0 * s)


def base_jets(point: FramePoint) -> tuple[Jet2, Jet2]:
    return lift(point.sigma, "sigma"), lift(point.u, "u")


def bracket_table(point: FramePoint, profile: WarpProfile) -> BracketTable:
    sig, u = base_jets(point)
    a, b, c = hyperbolic_helpers(sig)
    W = profile.warp_jet(u)
    dW = W.derivative_u()

    table = Jet2.zeros((DIM, DIM, DIM))

    def put(i, j, k, val):
        table[k - 1, i - 1, j - 1] = val
        table[k - 1, j - 1, i - 1] = -val

    w_over_u = W / u
    put(1, 2, 3, c / (u * a * b))
    put(1, 2, 5, 2.0 * w_over_u)
    put(1, 3, 2, b / (u * a * c))
    put(1, 4, 1, b / (u * a))
    put(1, 6, 1, w_over_u)
    put(2, 3, 1, a / (u * b * c))
    put(2, 4, 2, a / (u * b))
    put(2, 6, 2, w_over_u)
    put(3, 4, 3, 4.0 * a * b / (u * c))
    put(3, 4, 5, 2.0 * w_over_u)
    put(3, 6, 3, w_over_u)
    put(4, 6, 4, w_over_u)
    put(5, 6, 5, (W + u * dW) / u)
    return BracketTable(point, table, float(W.value))


def frame_gradient(f: Jet2, point: FramePoint, W: float) -> np.ndarray:
    """Y_a(f) for a = 1..6 stacked on a new leading axis (0-based)."""
    value = np.asarray(f.value, dtype=float)
    out = np.zeros((DIM,) + value.shape)
    out[3] = np.asarray(f.d_sigma) / point.u
    out[5] = W * np.asarray(f.d_u)
    return out


def frame_derivative(
    f: Callable[[Jet2, Jet2], Jet2] | Jet2, direction: int, point: FramePoint, profile: WarpProfile
) -> float:
    """Y_direction applied to a function of (sigma, u); ``direction`` is 1-based.

    ``f`` is either a callable taking the (sigma, u) seed jets or an already
    evaluated jet at ``point``.
    """
    if not 1 <= direction <= DIM:
        raise ValueError(f"frame direction must be in 1..{DIM}, got {direction}")
    sig, u = base_jets(point)
    jet = f(sig, u) if callable(f) else f
    W = float(profile.warp_jet(u).value)
    return float(frame_gradient(jet, point, W)[direction - 1])


def jacobi_tensor(table: BracketTable) -> np.ndarray:
    """J[l, i, j, k]: Y_l component of the cyclic sum [[Y_i,Y_j],Y_k] + cyclic."""
    c = table.c.value
    dc = frame_gradient(table.c, table.point, table.W)  # dc[a, l, i, j] = Y_a(c^l_ij)
    # [[Y_i,Y_j],Y_k] = sum_m c^m_ij [Y_m,Y_k] - Y_k(c^m_ij) Y_m
    term = np.einsum("mij,lmk->lijk", c, c) - np.einsum("klij->lijk", dc)
    return term + np.einsum("lijk->ljki", term) + np.einsum("lijk->lkij", term)


def jacobi_residual(point: FramePoint, profile: WarpProfile, table: BracketTable | None = None) -> float:
    """Largest frame component of the Jacobi cyclic sum over i < j < k."""
    if table is None:
        table = bracket_table(point, profile)
    J = jacobi_tensor(table)
    return max(float(np.max(np.abs(J[:, i, j, k]))) for i, j, k in combinations(range(DIM), 3))
