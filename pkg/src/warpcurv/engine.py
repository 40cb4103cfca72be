"""Numerical moving-frames curvature for the n = 3 frame.

Levi-Civita connection from the structure functions alone (orthonormal
Koszul formula), then the Riemann tensor from the connection and its frame
derivatives.  Nothing here refers to closed-form curvature expressions, so
the module serves as an independent oracle for :mod:`warpcurv.closed_forms`.

Sign convention: ``R[i, j, k, l] = <R(Y_i, Y_j) Y_k, Y_l>`` with
``R(X, Y) Z = nabla_Y nabla_X Z - nabla_X nabla_Y Z + nabla_[X,Y] Z``, so
that ``R[i, j, i, j]`` is the sectional curvature of span(Y_i, Y_j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .frame import DIM, BracketTable, FramePoint, bracket_table, frame_gradient
from .jets import Jet2
from .warp import WarpProfile


@dataclass
class ConnectionTable:
    """gamma[k, i, j] = <nabla_{Y_k} Y_i, Y_j> (0-based)."""

    point: FramePoint
    gamma: Jet2
    W: float

    def component(self, k: int, i: int, j: int) -> float:
        """1-based: the Y_j coefficient of nabla_{Y_k} Y_i."""
        return float(self.gamma.value[k - 1, i - 1, j - 1])

    def metric_defect(self) -> float:
        g = self.gamma.value
        return float(np.max(np.abs(g + g.transpose(0, 2, 1))))

    def torsion_defect(self, table: BracketTable) -> float:
        # nabla_i Y_j - nabla_j Y_i = [Y_i, Y_j]
        g = self.gamma.value
        lhs = g - g.transpose(1, 0, 2)  # lhs[i, j, k]
        return float(np.max(np.abs(lhs - table.c.value.transpose(1, 2, 0))))


def _symmetrize(R: np.ndarray) -> np.ndarray:
    R = 0.5 * (R - R.transpose(1, 0, 2, 3))
    R = 0.5 * (R - R.transpose(0, 1, 3, 2))
    return 0.5 * (R + R.transpose(2, 3, 0, 1))


@dataclass
class CurvatureTensor:
    """Riemann tensor in an orthonormal frame, symmetric under
    R_ijkl = -R_jikl = -R_ijlk = R_klij by construction."""

    R: np.ndarray
    raw_symmetry_defect: float = field(default=0.0)

    def __post_init__(self):
        R = np.asarray(self.R, dtype=float)
        sym = _symmetrize(R)
        self.raw_symmetry_defect = max(self.raw_symmetry_defect, float(np.max(np.abs(sym - R))))
        self.R = sym

    @property
    def dim(self) -> int:
        return self.R.shape[0]

    def component(self, i: int, j: int, k: int, l: int) -> float:
        """1-based component R_{i,j,k,l}."""
        return float(self.R[i - 1, j - 1, k - 1, l - 1])

    def bianchi_residual(self) -> float:
        R = self.R
        cyc = R + R.transpose(1, 2, 0, 3) + R.transpose(2, 0, 1, 3)
        return float(np.max(np.abs(cyc)))

    def ricci(self) -> np.ndarray:
        """Ric(Y_a, Y_b) = sum_k R_{a k b k}."""
        return np.einsum("akbk->ab", self.R)

    def nonzero(self, tol: float = 0.0):
        """Yield (i, j, k, l, value), 1-based, for |value| > tol."""
        d = self.dim
        for idx in product(range(d), repeat=4):
            val = self.R[idx]
            if abs(val) > tol:
                yield tuple(i + 1 for i in idx) + (float(val),)


def koszul_connection(
    point: FramePoint, profile: WarpProfile, table: BracketTable | None = None
) -> ConnectionTable:
    """gamma_kij = 1/2 (<[Y_k,Y_i],Y_j> - <[Y_i,Y_j],Y_k> + <[Y_j,Y_k],Y_i>)."""
    if table is None:
        table = bracket_table(point, profile)

    def koszul(c):
        return 0.5 * (np.einsum("jki->kij", c) - c + np.einsum("ijk->kij", c))

    return ConnectionTable(table.point, table.c.map(koszul), table.W)


def curvature_from_connection(conn: ConnectionTable, table: BracketTable) -> CurvatureTensor:
    g = conn.gamma.value
    dg = frame_gradient(conn.gamma, conn.point, conn.W)  # dg[a, k, i, j] = Y_a(gamma_kij)
    c = table.c.value
    # S = <nabla_i nabla_j Y_k - nabla_j nabla_i Y_k - nabla_[Y_i,Y_j] Y_k, Y_l>
    nabla_ij = dg + np.einsum("jkm,iml->ijkl", g, g)
    S = nabla_ij - nabla_ij.transpose(1, 0, 2, 3) - np.einsum("mij,mkl->ijkl", c, g)
    return CurvatureTensor(-S)


def riemann_numeric(point: FramePoint, profile: WarpProfile) -> CurvatureTensor:
    """Full 6x6x6x6 Riemann tensor at ``point``."""
    table = bracket_table(point, profile)
    conn = koszul_connection(point, profile, table)
    return curvature_from_connection(conn, table)


def hyperbolic_identity_12(sigma: float) -> float:
    """(-a^4 - b^4 + 3c^4 - 2a^2b^2 - 2a^2c^2 + 2b^2c^2) / (a^2 b^2 c^2), identically 12."""
    a, b, c = np.cosh(sigma), np.sinh(sigma), np.cosh(2 * sigma)
    a2, b2, c2 = a * a, b * b, c * c
    num = -a2 * a2 - b2 * b2 + 3 * c2 * c2 - 2 * a2 * b2 - 2 * a2 * c2 + 2 * b2 * c2
    return num / (a2 * b2 * c2)


def hyperbolic_identity_4(sigma: float) -> float:
    """-a^2/(b^2 c) + c/b^2 + c/a^2 + b^2/(a^2 c), identically 4."""
    a, b, c = np.cosh(sigma), np.sinh(sigma), np.cosh(2 * sigma)
    a2, b2 = a * a, b * b
    return -a2 / (b2 * c) + c / b2 + c / a2 + b2 / (a2 * c)

