"""Closed-form connection, curvature and Ricci tensor of the warped metric.

Frame order is (Y_1, ..., Y_{2n-2}, Y_{2n-1}, Y_{2n}) with holomorphic
pairs (Y_1, Y_2), (Y_3, Y_4), ...; Y_{2n-1} is the circle direction and
Y_{2n} the radial one.  With H = (1 + W^2)/u^2, P = W W'/u and
Q = W W'' + (W')^2 the nonzero components are, up to tensor symmetries:

    R_{i,i+1,i,i+1} = -4H                    (i odd)
    R_{i,j,i,j}     = -H                     (i, j horizontal, not a pair)
    R_{i,f,i,f}     = -P                     (f = 2n-1, 2n)
    R_{2n-1,2n,2n-1,2n} = -3P - Q
    R_{i,i+1,j,j+1} = 2R_{i,j,i+1,j+1} = -2R_{i,j+1,i+1,j} = -2H
    R_{i,i+1,2n-1,2n} = 2R_{i,2n-1,i+1,2n} = -2R_{i,2n,i+1,2n-1} = -2P
"""

from __future__ import annotations

import numpy as np

from .cone import largest_root
from .engine import ConnectionTable, CurvatureTensor
from .errors import DomainError, ParameterError
from .frame import DIM, FramePoint, base_jets, hyperbolic_helpers
from .jets import Jet2, lift
from .warp import WarpProfile


def connection_closed_form(point: FramePoint, profile: WarpProfile) -> ConnectionTable:
    """The 36 connection components for n = 3, transcribed term by term."""
    sig, u = base_jets(point)
    a, b, c = hyperbolic_helpers(sig)
    W = profile.warp_jet(u)
    dW = W.derivative_u()

    p = a / (b * c)
    q = b / (a * c)
    r = c / (a * b)
    wu = W / u
    fib = (W + u * dW) / u

    gamma = Jet2.zeros((DIM, DIM, DIM))

    def nabla(k, i, *terms):
        # nabla_{Y_k} Y_i = sum coeff * Y_j
        for coeff, j in terms:
            gamma[k - 1, i - 1, j - 1] = coeff

    half = -0.5 / u
    nabla(1, 1, (-b / (u * a), 4), (-wu, 6))
    nabla(1, 2, (half * (p + q - r), 3), (wu, 5))
    nabla(1, 3, (half * (-p - q + r), 2))
    nabla(1, 4, (b / (u * a), 1))
    nabla(2, 1, (half * (p + q + r), 3), (-wu, 5))
    nabla(2, 2, (-a / (u * b), 4), (-wu, 6))
    nabla(2, 3, (half * (-p - q - r), 1))
    nabla(2, 4, (a / (u * b), 2))
    nabla(3, 1, (half * (-p + q + r), 2))
    nabla(3, 2, (half * (p - q - r), 1))
    nabla(3, 3, (-4.0 * a * b / (u * c), 4), (-wu, 6))
    nabla(3, 4, (4.0 * a * b / (u * c), 3), (wu, 5))
    nabla(4, 3, (-wu, 5))
    nabla(4, 4, (-wu, 6))
    nabla(1, 5, (-wu, 2))
    nabla(2, 5, (wu, 1))
    nabla(3, 5, (-wu, 4))
    nabla(4, 5, (wu, 3))
    for k in range(1, 5):
        nabla(k, 6, (wu, k))
    nabla(5, 1, (-wu, 2))
    nabla(5, 2, (wu, 1))
    nabla(5, 3, (-wu, 4))
    nabla(5, 4, (wu, 3))
    nabla(5, 5, (-fib, 6))
    nabla(5, 6, (fib, 5))
    # nabla_{Y_4} Y_1 = nabla_{Y_4} Y_2 = 0 and nabla_{Y_6} = 0: left as zeros
    return ConnectionTable(point, gamma, float(W.value))


def _put(R, i, j, k, l, val):
    for a, b, s1 in ((i, j, 1.0), (j, i, -1.0)):
        for c, d, s2 in ((k, l, 1.0), (l, k, -1.0)):
            R[a, b, c, d] = s1 * s2 * val
            R[c, d, a, b] = s1 * s2 * val


def assemble(n: int, hol, gen, fib, top, mix_h, mix_f) -> CurvatureTensor:
    """Build the 2n-dimensional tensor from the six family values.

    ``hol``/``gen``: holomorphic and generic horizontal planes; ``fib``:
    horizontal-fibre planes; ``top``: the fibre plane; ``mix_h``/``mix_f``:
    R_{i,i+1,j,j+1} and R_{i,i+1,2n-1,2n}.  Holomorphic-pair values win
    over generic ones by construction order.
    """
    if int(n) != n or n < 2:
        raise ParameterError(f"n must be an integer >= 2, got {n!r}")
    d = 2 * n
    f1, f2 = d - 2, d - 1
    R = np.zeros((d, d, d, d))
    horiz = range(d - 2)
    for i in horiz:
        for j in horiz:
            if i < j:
                _put(R, i, j, i, j, hol if (i % 2 == 0 and j == i + 1) else gen)
        _put(R, i, f1, i, f1, fib)
        _put(R, i, f2, i, f2, fib)
    _put(R, f1, f2, f1, f2, top)
    starts = range(0, d - 2, 2)
    for p in starts:
        for q in starts:
            if p < q:
                _put(R, p, p + 1, q, q + 1, mix_h)
                _put(R, p, q, p + 1, q + 1, 0.5 * mix_h)
                _put(R, p, q + 1, p + 1, q, -0.5 * mix_h)
        _put(R, p, p + 1, f1, f2, mix_f)
        _put(R, p, f1, p + 1, f2, 0.5 * mix_f)
        _put(R, p, f2, p + 1, f1, -0.5 * mix_f)
    return CurvatureTensor(R)


def _warp_terms(u: float, profile: WarpProfile):
    if u <= profile.domain_lower:
        raise DomainError("riemann_closed_form", u, f"u must exceed {profile.domain_lower!r}")
    uj = lift(u, "u")
    W = profile.warp_jet(uj)
    w, w1, w2 = float(W.value), float(W.d_u), float(W.d_u_u)
    H = (1.0 + w * w) / (u * u)
    P = w * w1 / u
    Q = w * w2 + w1 * w1
    return H, P, Q


def riemann_closed_form(u: float, profile: WarpProfile, n: int) -> CurvatureTensor:
    H, P, Q = _warp_terms(u, profile)
    return assemble(n, -4.0 * H, -H, -P, -3.0 * P - Q, -2.0 * H, -2.0 * P)


def riemann_alpha(u: float, alpha: float, n: int) -> CurvatureTensor:
    """Curvature of the Einstein metric lambda_alpha, written through x = alpha/u^(2n+2)."""
    if u < largest_root(alpha, n) * (1.0 - 1e-12):
        raise DomainError("riemann_alpha", u, "u below the largest root u_alpha")
    x = alpha / u ** (2 * n + 2)
    return assemble(
        n,
        hol=-4.0 - 4.0 * x,
        gen=-1.0 - x,
        fib=-1.0 + n * x,
        top=-4.0 - 2.0 * n * (n - 1) * x,
        mix_h=-2.0 - 2.0 * x,
        mix_f=-2.0 + 2.0 * n * x,
    )


def ricci_diagonal(u: float, profile: WarpProfile, n: int) -> tuple[float, float]:
    """(rho_H, rho_F): Ricci on horizontal directions and on Y_{2n-1}, Y_{2n}.

    The Ricci tensor is diagonal in the frame.
    """
    H, P, Q = _warp_terms(u, profile)
    rho_h = -2.0 * n * H - 2.0 * P
    rho_f = -(2 * n + 1) * P - Q
    return rho_h, rho_f
