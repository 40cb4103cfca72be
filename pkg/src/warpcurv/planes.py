"""Sectional curvatures of 2-planes and the pinching bounds of lambda_alpha."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .closed_forms import riemann_alpha
from .cone import alpha_for_cone_angle, alpha_max, cone_data, largest_root
from .engine import CurvatureTensor
from .errors import InputError, ParameterError

ORTHO_TOL = 1e-12
SAMPLE_TOL = 1e-9
CHUNK = 8192


def thread_cap() -> int:
    """Worker count: CPU count, capped by WARPCURV_THREADS when set."""
    n = os.cpu_count() or 1
    env = os.environ.get("WARPCURV_THREADS")
    if env:
        try:
            n = min(n, max(1, int(env)))
        except ValueError:
            pass
    return n


@dataclass(frozen=True)
class TwoPlane:
    """Orthonormal pair (a, b) of frame-coefficient vectors spanning a 2-plane."""

    a: np.ndarray
    b: np.ndarray

    def check(self, tol: float = ORTHO_TOL) -> None:
        a, b = np.asarray(self.a, float), np.asarray(self.b, float)
        if a.shape != b.shape or a.ndim != 1:
            raise InputError("plane vectors must be 1-d and of equal length")
        defects = (abs(a @ a - 1.0), abs(b @ b - 1.0), abs(a @ b))
        if max(defects) > tol:
            raise InputError(f"plane is not orthonormal (|a|^2-1, |b|^2-1, a.b) = {defects}")

    @classmethod
    def span(cls, a, b) -> "TwoPlane":
        """Gram-Schmidt an arbitrary independent pair."""
        a = np.asarray(a, float)
        a = a / np.linalg.norm(a)
        b = np.asarray(b, float) - (np.asarray(b, float) @ a) * a
        return cls(a, b / np.linalg.norm(b))

    @classmethod
    def coordinate(cls, dim: int, i: int, j: int) -> "TwoPlane":
        """span(Y_i, Y_j), 1-based."""
        e = np.eye(dim)
        return cls(e[i - 1], e[j - 1])

    def rotated(self, t: float) -> "TwoPlane":
        c, s = np.cos(t), np.sin(t)
        return TwoPlane(c * self.a + s * self.b, -s * self.a + c * self.b)


def sectional_curvature(tensor: CurvatureTensor, plane: TwoPlane) -> float:
    """K = sum a_i b_j a_k b_l R_ijkl."""
    plane.check()
    a, b = np.asarray(plane.a, float), np.asarray(plane.b, float)
    if a.shape[0] != tensor.dim:
        raise InputError(f"plane lives in dimension {a.shape[0]}, tensor in {tensor.dim}")
    return float(np.einsum("ijkl,i,j,k,l->", tensor.R, a, b, a, b))


def bivector_matrix(tensor: CurvatureTensor) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Curvature operator on the basis Y_i ^ Y_j (i < j)."""
    pairs = list(combinations(range(tensor.dim), 2))
    I = np.array([p[0] for p in pairs])
    J = np.array([p[1] for p in pairs])
    return tensor.R[I[:, None], J[:, None], I[None, :], J[None, :]], I, J


def sectional_curvatures(tensor: CurvatureTensor, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Batched K for orthonormal rows of A and B, via bivectors a ^ b."""
    M, I, J = bivector_matrix(tensor)
    w = A[:, I] * B[:, J] - A[:, J] * B[:, I]
    return np.einsum("sp,pq,sq->s", w, M, w)


def random_planes(rng: np.random.Generator, count: int, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Uniform random orthonormal pairs: Gram-Schmidt on Gaussian vectors."""
    A = rng.standard_normal((count, dim))
    B = rng.standard_normal((count, dim))
    A /= np.linalg.norm(A, axis=1, keepdims=True)
    B -= np.sum(A * B, axis=1, keepdims=True) * A
    B /= np.linalg.norm(B, axis=1, keepdims=True)
    return A, B


def sample_extremes(tensor: CurvatureTensor, count: int, seed: int, threads: int | None = None):
    """(min K, max K) over ``count`` seeded random planes; (inf, -inf) if count == 0.

    Planes are drawn in fixed chunks; chunk i uses the substream
    SeedSequence(seed, spawn_key=(i,)), so results do not depend on the
    number of worker threads.
    """
    if count <= 0:
        return np.inf, -np.inf
    nchunks = -(-count // CHUNK)

    def work(i):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(i,)))
        m = min(CHUNK, count - i * CHUNK)
        K = sectional_curvatures(tensor, *random_planes(rng, m, tensor.dim))
        return float(K.min()), float(K.max())

    workers = min(threads or thread_cap(), nchunks)
    if workers <= 1:
        parts = [work(i) for i in range(nchunks)]
    else:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(work, range(nchunks)))
    return min(p[0] for p in parts), max(p[1] for p in parts)


def _bound_values(alpha, n, u):
    x = alpha / u ** (2 * n + 2)
    return -4.0 - 2.0 * n * (n - 1) * x, -1.0 + n * x


def curvature_bounds(alpha: float, n: int, u: float) -> tuple[float, float]:
    """(lower, upper) = (-4 - 2n(n-1) alpha/u^(2n+2), -1 + n alpha/u^(2n+2))."""
    amax = alpha_max(n)
    if not 0.0 < alpha < amax:
        raise ParameterError(f"bounds are asserted for alpha in (0, {amax!r}), got {alpha!r}")
    if u < largest_root(alpha, n) * (1.0 - 1e-12):
        raise ParameterError(f"u={u!r} below u_alpha")
    return _bound_values(alpha, n, u)


@dataclass
class BoundsReport:
    n: int
    alpha: float
    u: float
    count: int
    seed: int
    lower: float
    upper: float
    sampled_min: float
    sampled_max: float
    observed_min: float
    observed_max: float
    upper_plane_k: float
    lower_plane_k: float
    asserted: bool
    passed: bool
    tol: float = SAMPLE_TOL
    extras: dict = field(default_factory=dict)


def extremal_planes(n: int) -> tuple[TwoPlane, TwoPlane]:
    """(upper, lower): span(Y_{2n-1}, Y_1) and span(Y_{2n-1}, Y_{2n})."""
    d = 2 * n
    return TwoPlane.coordinate(d, d - 1, 1), TwoPlane.coordinate(d, d - 1, d)


def verify_bounds_by_sampling(
    alpha: float, n: int, u: float, count: int, seed: int = 42, threads: int | None = None, tol: float = SAMPLE_TOL
) -> BoundsReport:
    """Check lower - tol <= K <= upper + tol on random planes and the extremal ones.

    The bounds are only claimed for alpha in (0, alpha_max) (alpha = 0 gives the
    complex hyperbolic pinching [-4, -1]); for other alpha they are reported
    with ``asserted = False``.
    """
    tensor = riemann_alpha(u, alpha, n)
    lower, upper = _bound_values(alpha, n, u)
    kmin, kmax = sample_extremes(tensor, count, seed, threads)
    up_plane, low_plane = extremal_planes(n)
    k_up = sectional_curvature(tensor, up_plane)
    k_low = sectional_curvature(tensor, low_plane)
    observed_min = min(kmin, k_up, k_low)
    observed_max = max(kmax, k_up, k_low)
    passed = bool(lower - tol <= observed_min and observed_max <= upper + tol)
    return BoundsReport(
        n=n,
        alpha=alpha,
        u=u,
        count=count,
        seed=seed,
        lower=lower,
        upper=upper,
        sampled_min=kmin,
        sampled_max=kmax,
        observed_min=observed_min,
        observed_max=observed_max,
        upper_plane_k=k_up,
        lower_plane_k=k_low,
        asserted=0.0 <= alpha < alpha_max(n),
        passed=passed,
        tol=tol,
    )


@dataclass
class DegreeRow:
    d: int
    alpha: float
    u_alpha: float
    c_alpha: float
    lower: float
    upper: float


@dataclass
class DegreeTable:
    n: int
    rows: list
    lower_limit: float
    upper_limit: float
    lower_decreasing: bool
    upper_increasing: bool

    @property
    def final_gaps(self) -> tuple[float, float]:
        last = self.rows[-1]
        return abs(last.lower - self.lower_limit), abs(last.upper - self.upper_limit)


def extreme_curvatures_vs_degree(n: int, degrees) -> DegreeTable:
    """Curvature bounds at the branching locus u = u_{alpha_d} for each degree d.

    As d grows they approach -2(n+1) and 0.
    """
    rows = []
    for d in sorted(degrees):
        if d < 2:
            raise ParameterError(f"degree must be >= 2, got {d}")
        alpha = alpha_for_cone_angle(n, d=d)
        cd = cone_data(alpha, n)
        lower, upper = _bound_values(alpha, n, cd.u_alpha)
        rows.append(DegreeRow(d, alpha, cd.u_alpha, cd.c_alpha, lower, upper))
    lows = [r.lower for r in rows]
    ups = [r.upper for r in rows]
    return DegreeTable(
        n=n,
        rows=rows,
        lower_limit=-2.0 * (n + 1),
        upper_limit=0.0,
        lower_decreasing=all(x > y for x, y in zip(lows, lows[1:])),
        upper_increasing=all(x < y for x, y in zip(ups, ups[1:])),
    )
