"""Cutoff interpolation between V_alpha and u^2 - 1, and its Einstein deficit.

The interpolated profile is

    V_k(u) = u^2 - 1 + (alpha / u^(2n)) * chi(rho(u) / eta),   rho(u) = arccosh(u),

so it equals V_alpha for rho <= eta/2 and u^2 - 1 for rho >= eta.  The
literal cut in u (``chi(u / eta)``) is available with ``convention="u"``.

The deficit Ric + (2n+2) g is diagonal in the frame, with value D_H on the
2n-2 horizontal directions and D_F on the two fibre directions.  Writing
V = u^2 - 1 + E these are

    D_H = -2n E / u^2 - E' / u,
    D_F = -(2n+1) E' / (2u) - E'' / 2,

an exact rearrangement of the closed-form Ricci diagonal that avoids
cancelling an O(1) Ricci value against 2n+2 far out in the annulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import jets
from .closed_forms import riemann_closed_form
from .cone import largest_root
from .errors import DomainError, ParameterError
from .jets import Jet2, lift
from .planes import TwoPlane, sample_extremes, sectional_curvature
from .warp import WarpProfile

FD_STEP = 1e-4
L2_NODES = 200
CONVENTIONS = ("r", "u")


def _psi(s):
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    pos = s > 0
    out[pos] = np.exp(-1.0 / s[pos])
    return out


def chi(t):
    """Smooth cutoff: 1 for t <= 1/2, 0 for t >= 1, chi(3/4) = 1/2.

    psi(2-2t) / (psi(2-2t) + psi(2t-1)) with psi(s) = exp(-1/s) for s > 0.
    """
    p, q = _psi(2.0 - 2.0 * np.asarray(t, float)), _psi(2.0 * np.asarray(t, float) - 1.0)
    out = p / (p + q)
    return float(out) if np.ndim(out) == 0 else out


def _psi_jet(s: Jet2) -> Jet2:
    if s.value <= 0.0:
        return Jet2.constant(0.0)
    return jets.exp(-1.0 / s)


def chi_jet(t: Jet2) -> Jet2:
    if t.value <= 0.5:
        return Jet2.constant(1.0)
    if t.value >= 1.0:
        return Jet2.constant(0.0)
    p = _psi_jet(2.0 - 2.0 * t)
    return p / (p + _psi_jet(2.0 * t - 1.0))


class InterpolatedWarp(WarpProfile):
    def __init__(self, n: int, alpha: float, eta: float, convention: str = "r"):
        if eta <= 0.0:
            raise ParameterError(f"eta must be positive, got {eta!r}")
        if convention not in CONVENTIONS:
            raise ParameterError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
        self.n = n
        self.alpha = alpha
        self.eta = eta
        self.convention = convention
        self.u_alpha = largest_root(alpha, n)
        self.domain_lower = self.u_alpha
        self.label = f"V_k(n={n}, alpha={alpha!r}, eta={eta!r}, cut in {convention})"

    def cutoff(self, u: Jet2) -> Jet2:
        if self.convention == "u":
            return chi_jet(u / self.eta)
        if u.value <= 1.0:
            # rho <= 0 lies inside the plateau
            return Jet2.constant(1.0)
        return chi_jet(jets.arccosh(u) / self.eta)

    def excess(self, u: Jet2) -> Jet2:
        return self.alpha * jets.power(u, -2 * self.n) * self.cutoff(u)


def deficit_diagonal(profile: WarpProfile, n: int, u: float) -> tuple[float, float]:
    """(D_H, D_F): the diagonal of Ric + (2n+2) g at u."""
    if u <= profile.domain_lower:
        raise DomainError("deficit_diagonal", u, f"u must exceed {profile.domain_lower!r}")
    E = profile.excess(lift(u, "u"))
    e, e1, e2 = float(E.value), float(E.d_u), float(E.d_u_u)
    d_h = -2.0 * n * e / (u * u) - e1 / u
    d_f = -(2 * n + 1) * e1 / (2.0 * u) - 0.5 * e2
    return d_h, d_f


def _annulus(eta, convention):
    """Annulus endpoints in the cut coordinate s, and s -> (u, du/ds)."""
    if convention == "u":
        return (0.5 * eta, eta), (lambda s: s), (lambda s: 1.0)
    return (0.5 * eta, eta), math.cosh, math.sinh


def _y6_power(profile, n, s, order, to_u, du_ds, h=FD_STEP):
    """Y6^order applied to (D_H, D_F) at cut coordinate s, by central differences in s.

    Y6 = W d/du = (W / (du/ds)) d/ds.
    """
    if order == 0:
        return np.array(deficit_diagonal(profile, n, to_u(s)))
    fwd = _y6_power(profile, n, s + h, order - 1, to_u, du_ds, h)
    bwd = _y6_power(profile, n, s - h, order - 1, to_u, du_ds, h)
    W = math.sqrt(profile.evaluate(to_u(s))[0])
    return W / du_ds(s) * (fwd - bwd) / (2.0 * h)


@dataclass
class DeficitReport:
    n: int
    alpha: float
    eta: float
    m: int
    grid: int
    convention: str
    sup_by_order: list
    sup: float
    fitted_A: float
    l2_per_locus_volume: float
    outside_max: float
    argmax_s: float
    extras: dict = field(default_factory=dict)


def deficit_report(
    alpha: float, n: int, eta: float, m: int = 0, grid: int = 401, convention: str = "r"
) -> DeficitReport:
    """Sup of |D_H|, |D_F| and their Y6-derivatives (order <= m) over the annulus.

    Also returns A = sup * cosh(eta/2)^(2n+2), the per-unit-locus-volume
    integral 2 pi int ((2n-2) D_H^2 + 2 D_F^2) u^(2n-1) du over the annulus,
    and the largest |deficit| sampled outside it.
    """
    if eta < 2.0:
        raise ParameterError(f"eta must be >= 2, got {eta!r}")
    if not 0 <= m <= 2:
        raise ParameterError(f"derivative order m must be 0, 1 or 2, got {m!r}")
    profile = InterpolatedWarp(n, alpha, eta, convention)
    (s0, s1), to_u, du_ds = _annulus(eta, convention)
    ss = np.linspace(s0, s1, grid)

    sup_by_order = []
    argmax = s0
    for order in range(m + 1):
        vals = np.array([np.max(np.abs(_y6_power(profile, n, s, order, to_u, du_ds))) for s in ss])
        sup_by_order.append(float(vals.max()))
        if order == 0:
            argmax = float(ss[int(vals.argmax())])
    sup = max(sup_by_order)

    nodes, weights = np.polynomial.legendre.leggauss(L2_NODES)
    half = 0.5 * (s1 - s0)
    total = 0.0
    for x, w in zip(nodes, weights):
        s = s0 + half * (x + 1.0)
        u = to_u(s)
        d_h, d_f = deficit_diagonal(profile, n, u)
        total += w * ((2 * n - 2) * d_h**2 + 2.0 * d_f**2) * u ** (2 * n - 1) * du_ds(s)
    l2 = 2.0 * math.pi * half * total

    return DeficitReport(
        n=n,
        alpha=alpha,
        eta=eta,
        m=m,
        grid=grid,
        convention=convention,
        sup_by_order=sup_by_order,
        sup=sup,
        fitted_A=sup * math.cosh(0.5 * eta) ** (2 * n + 2),
        l2_per_locus_volume=l2,
        outside_max=support_leak(profile, n),
        argmax_s=argmax,
    )


def support_leak(profile: "InterpolatedWarp", n: int, samples: int = 100) -> float:
    """Largest |D_H|, |D_F| sampled strictly inside the plateau and beyond the annulus."""
    eta = profile.eta
    if profile.convention == "u":
        inner = np.linspace(profile.u_alpha, 0.5 * eta, samples + 1)[1:]
        outer = np.linspace(eta, 1.5 * eta, samples)
    else:
        inner = np.concatenate(
            [np.linspace(profile.u_alpha, 1.0, samples // 2 + 1)[1:], np.cosh(np.linspace(0.0, 0.5 * eta, samples // 2))]
        )
        outer = np.cosh(np.linspace(eta, 1.5 * eta, samples))
    us = np.concatenate([inner, outer])
    worst = 0.0
    for u in us[us > profile.domain_lower]:
        worst = max(worst, *map(abs, deficit_diagonal(profile, n, float(u))))
    return worst


@dataclass
class DecayFit:
    n: int
    alpha: float
    etas: list
    reports: list
    slope: float
    slope_target: float
    slope_rel_error: float
    A_ratio: float
    l2_decreasing: bool

    def slope_ok(self, rel_tol: float = 0.05) -> bool:
        return self.slope_rel_error <= rel_tol

    def A_stable(self, factor: float = 2.0) -> bool:
        return self.A_ratio <= factor


def deficit_decay(alpha: float, n: int, etas=(4.0, 6.0, 8.0, 10.0), m: int = 0, grid: int = 401) -> DecayFit:
    """Fit log(sup deficit) against eta; the cosh(eta/2)^-(2n+2) rate has slope -(n+1)."""
    reports = [deficit_report(alpha, n, eta, m=m, grid=grid) for eta in etas]
    sups = np.array([r.sup for r in reports])
    slope = float(np.polyfit(np.asarray(etas, float), np.log(sups), 1)[0])
    target = -(n + 1.0)
    As = [r.fitted_A for r in reports]
    l2 = [r.l2_per_locus_volume for r in reports]
    return DecayFit(
        n=n,
        alpha=alpha,
        etas=list(etas),
        reports=reports,
        slope=slope,
        slope_target=target,
        slope_rel_error=abs(slope - target) / abs(target),
        A_ratio=max(As) / min(As),
        l2_decreasing=all(x > y for x, y in zip(l2, l2[1:])),
    )


@dataclass
class CurvatureScan:
    n: int
    alpha: float
    eta: float
    rho_range: tuple
    u_points: int
    planes: int
    max_k: float
    min_k: float
    passed: bool


def interpolated_curvature_scan(
    alpha: float,
    n: int,
    eta: float,
    grid: int = 50,
    planes: int = 10_000,
    seed: int = 42,
    rho_range: tuple | None = None,
    threads: int | None = None,
) -> CurvatureScan:
    """Sample sectional curvatures of the interpolated metric over the annulus.

    ``rho_range`` overrides the radial window (default: the annulus
    [eta/2, eta]).  When u_alpha < 1, rho <= 0 entries are replaced by points
    in (u_alpha, 1]; points at or below u_alpha are dropped.
    Passes when every sampled curvature is negative.
    """
    if eta < 2.0:
        raise ParameterError(f"eta must be >= 2, got {eta!r}")
    profile = InterpolatedWarp(n, alpha, eta)
    lo, hi = rho_range if rho_range is not None else (0.5 * eta, eta)
    rhos = np.linspace(lo, hi, grid)
    us = [math.cosh(r) for r in rhos if r > 0]
    if len(us) < len(rhos) and profile.u_alpha < 1.0:
        us = list(np.linspace(profile.u_alpha, 1.0, grid - len(us) + 1)[1:]) + us
    us = [u for u in us if u > profile.domain_lower]
    d = 2 * n
    coordinate = [TwoPlane.coordinate(d, i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1)]
    kmax, kmin = -np.inf, np.inf
    for idx, u in enumerate(us):
        tensor = riemann_closed_form(float(u), profile, n)
        lo_k, hi_k = sample_extremes(tensor, planes, seed + idx, threads)
        ks = [sectional_curvature(tensor, p) for p in coordinate]
        kmax = max(kmax, hi_k, max(ks))
        kmin = min(kmin, lo_k, min(ks))
    return CurvatureScan(n, alpha, eta, (float(lo), float(hi)), len(us), planes, float(kmax), float(kmin), bool(kmax < 0.0))
