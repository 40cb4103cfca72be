"""Command-line entry point: ``warpcurv <command> [options]``.

Commands
--------
verify-curvature  frame-engine curvature vs closed forms over a (sigma, u) grid
cone-table        alpha_d, u_alpha, c_alpha and a quadrature cone estimate per degree
deficit           support, decay and curvature sign of the interpolated metric
bounds            sampled sectional curvatures against the pinching bounds
radial            RK4 radial profile and its second-order ODE residual

Every command writes ``{config, results, pass, max_error, runtime_ms}`` as
JSON (or the ``results`` rows as CSV) and exits 0 on pass, 1 on a usage or
parameter error, 2 on a failed verification and 3 on a numerical failure.
``runtime_ms`` is only filled with ``--timing`` so that repeated runs with
the same configuration produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from itertools import combinations

import numpy as np

from . import closed_forms, cone, deficit, engine, planes, warp
from .errors import DegenerateError, NumericsError, WarpcurvError
from .frame import FramePoint

EXIT_PASS = 0
EXIT_USAGE = 1
EXIT_FAIL = 2
EXIT_NUMERICS = 3

DEFAULTS = {
    "rtol": 1e-8,
    "atol": 1e-10,
    "conn_tol": 1e-12,
    "cone_tol": 1e-4,
    "roundtrip_tol": 1e-12,
    "bounds_tol": 1e-9,
    "attain_tol": 1e-10,
    "gh_tol": 1e-6,
    "cosh_tol": 1e-8,
    "support_tol": 1e-13,
    "slope_tol": 0.05,
    "a_factor": 2.0,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; 2 is reserved for failed checks here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, *, alpha=True, eta=False, grid=None, samples=None):
    p.add_argument("--n", type=int, default=3, help="complex dimension (default 3)")
    if alpha:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--alpha", type=float, help="family parameter alpha")
        g.add_argument("--d", type=int, help="branching degree; alpha is chosen with cone angle 2 pi/d")
    if eta:
        p.add_argument("--eta", type=float, default=8.0, help="cutoff scale for support and curvature scan")
    if grid is not None:
        p.add_argument("--grid", type=int, default=grid)
    if samples is not None:
        p.add_argument("--samples", type=int, default=samples, help="random planes per point")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", help="output path (default stdout)")
    p.add_argument("--timing", action="store_true", help="record runtime_ms (output no longer reproducible)")
    for key, value in DEFAULTS.items():
        p.add_argument("--" + key.replace("_", "-"), type=float, default=value, dest=key, help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="warpcurv", description="Curvature verification for the warped Einstein family.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify-curvature", help="engine vs closed-form curvature")
    _common(p, grid=10)
    p.set_defaults(func=cmd_verify_curvature)

    p = sub.add_parser("cone-table", help="cone angle table over branching degrees")
    _common(p, alpha=False)
    p.add_argument("--d-min", type=int, default=1)
    p.add_argument("--d-max", type=int, default=12)
    p.add_argument("--offset", type=float, default=1e-6, help="quadrature offset above u_alpha")
    p.set_defaults(func=cmd_cone_table)

    p = sub.add_parser("deficit", help="Einstein deficit of the interpolated metric")
    _common(p, eta=True, grid=50, samples=10_000)
    p.add_argument("--etas", type=float, nargs="+", default=[4.0, 6.0, 8.0, 10.0])
    p.add_argument("--order", type=int, default=0, help="Y6-derivative order m <= 2")
    p.add_argument("--annulus-grid", type=int, default=401)
    p.set_defaults(func=cmd_deficit)

    p = sub.add_parser("bounds", help="sectional curvature pinching bounds")
    _common(p, samples=100_000)
    p.add_argument("--u", type=float, nargs="+", help="radial positions (default: u_alpha)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("radial", help="radial profile and second-order ODE residual")
    _common(p)
    p.add_argument("--rmax", type=float, default=5.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--every", type=int, default=100, help="emit every k-th RK4 node")
    p.set_defaults(func=cmd_radial)
    return parser


def _alpha(args) -> float:
    if getattr(args, "d", None) is not None:
        return cone.alpha_for_cone_angle(args.n, d=args.d)
    if getattr(args, "alpha", None) is None:
        raise UsageError("one of --alpha or --d is required")
    amax = cone.alpha_max(args.n)
    if args.alpha > amax:
        raise UsageError(f"alpha={args.alpha!r} exceeds alpha_max={amax!r} for n={args.n}")
    return args.alpha


def _tolerances(args):
    return {k: getattr(args, k) for k in DEFAULTS}


def _component_labels(dim):
    pairs = list(combinations(range(dim), 2))
    for x, (i, j) in enumerate(pairs):
        for k, l in pairs[x:]:
            yield i, j, k, l


def cmd_verify_curvature(args):
    alpha = _alpha(args)
    tol = _tolerances(args)
    if args.grid < 1:
        raise UsageError("--grid must be positive")
    u_alpha = cone.largest_root(alpha, args.n)
    profile = warp.einstein_profile(args.n, alpha)
    sigmas = np.linspace(0.3, 2.5, args.grid)
    us = np.linspace(u_alpha + 0.05, max(5.0, u_alpha + 1.0), args.grid)
    dim = 2 * args.n

    abs_err = np.zeros((dim,) * 4)
    rel_err = np.zeros((dim,) * 4)
    zero_err = np.zeros((dim,) * 4)
    ref_mag = np.zeros((dim,) * 4)
    conn_err = 0.0
    for s in sigmas:
        for u in us:
            u = float(u)
            expected = closed_forms.riemann_closed_form(u, profile, args.n).R
            if args.n == 3:
                point = FramePoint(float(s), u)
                got = engine.riemann_numeric(point, profile).R
                conn = engine.koszul_connection(point, profile).gamma.value
                ref = closed_forms.connection_closed_form(point, profile).gamma.value
                conn_err = max(conn_err, float(np.max(np.abs(conn - ref))))
            else:
                # no frame engine beyond n = 3: check against the alpha-specialised forms
                got = closed_forms.riemann_alpha(u, alpha, args.n).R
            diff = np.abs(got - expected)
            if not np.all(np.isfinite(diff)):
                raise NumericsError(f"non-finite curvature at sigma={s!r}, u={u!r}")
            abs_err = np.maximum(abs_err, diff)
            mag = np.abs(expected)
            ref_mag = np.maximum(ref_mag, mag)
            nz = mag > 0
            rel_err = np.maximum(rel_err, np.where(nz, diff / np.where(nz, mag, 1.0), 0.0))
            zero_err = np.maximum(zero_err, np.where(nz, 0.0, diff))

    rows = []
    ok = conn_err <= tol["conn_tol"]
    for i, j, k, l in _component_labels(dim):
        zero = ref_mag[i, j, k, l] == 0.0
        passed = zero_err[i, j, k, l] <= tol["atol"] and rel_err[i, j, k, l] <= tol["rtol"]
        ok &= bool(passed)
        rows.append(
            {
                "component": f"R{i + 1}{j + 1}{k + 1}{l + 1}",
                "max_abs": float(abs_err[i, j, k, l]),
                "max_rel": float(rel_err[i, j, k, l]),
                "zero": bool(zero),
                "pass": bool(passed),
            }
        )
    rows.append(
        {"component": "connection", "max_abs": conn_err, "max_rel": None, "zero": False, "pass": conn_err <= tol["conn_tol"]}
    )
    config = {"alpha": alpha, "u_alpha": u_alpha, "points": args.grid**2, "engine": args.n == 3}
    return config, rows, bool(ok), float(max(abs_err.max(), conn_err))


def cmd_cone_table(args):
    tol = _tolerances(args)
    if args.d_min < 1 or args.d_max < args.d_min:
        raise UsageError("need 1 <= --d-min <= --d-max")
    rows = []
    ok = True
    worst = 0.0
    for d in range(args.d_min, args.d_max + 1):
        alpha = cone.alpha_for_cone_angle(args.n, d=d) if d > 1 else 0.0
        cd = cone.cone_data(alpha, args.n)
        roundtrip = abs(cd.c_alpha - 1.0 / d)
        if 0.0 < alpha < cd.alpha_max:
            numeric = cone.cone_angle_numeric(alpha, args.n, args.offset)
        else:
            numeric = None
        lower, upper = planes._bound_values(alpha, args.n, cd.u_alpha)
        gap = abs(numeric - cd.c_alpha) if numeric is not None else 0.0
        passed = roundtrip <= tol["roundtrip_tol"] and gap <= tol["cone_tol"]
        ok &= passed
        worst = max(worst, gap, roundtrip)
        rows.append(
            {
                "d": d,
                "alpha": alpha,
                "u_alpha": cd.u_alpha,
                "c_alpha": cd.c_alpha,
                "c_numeric": numeric,
                "lower": lower,
                "upper": upper,
                "pass": passed,
            }
        )
    config = {"d_min": args.d_min, "d_max": args.d_max, "offset": args.offset}
    return config, rows, bool(ok), worst


def cmd_deficit(args):
    alpha = _alpha(args)
    tol = _tolerances(args)
    if min(args.etas + [args.eta]) < 2.0:
        raise UsageError("eta must be >= 2")
    if not 0 <= args.order <= 2:
        raise UsageError("--order must be 0, 1 or 2")
    if len(args.etas) < 2:
        raise UsageError("--etas needs at least two values for the decay fit")
    fit = deficit.deficit_decay(alpha, args.n, tuple(args.etas), m=args.order, grid=args.annulus_grid)
    support = deficit.deficit_report(alpha, args.n, args.eta, m=0, grid=args.annulus_grid).outside_max
    scan = deficit.interpolated_curvature_scan(alpha, args.n, args.eta, args.grid, args.samples, args.seed)
    rows = [
        {
            "kind": "eta",
            "eta": r.eta,
            "sup": r.sup,
            "fitted_A": r.fitted_A,
            "l2": r.l2_per_locus_volume,
            "outside_max": r.outside_max,
        }
        for r in fit.reports
    ]
    leak = max([support] + [r.outside_max for r in fit.reports])
    checks = {
        "support": leak <= tol["support_tol"],
        "slope": fit.slope_ok(tol["slope_tol"]),
        "A_stable": fit.A_stable(tol["a_factor"]),
        "l2_decreasing": fit.l2_decreasing,
        "curvature_negative": scan.passed,
    }
    rows.append(
        {
            "kind": "summary",
            "slope": fit.slope,
            "slope_target": fit.slope_target,
            "slope_rel_error": fit.slope_rel_error,
            "A_ratio": fit.A_ratio,
            "outside_max": leak,
            "scan_max_k": scan.max_k,
            "scan_min_k": scan.min_k,
            **{f"{k}_pass": v for k, v in checks.items()},
        }
    )
    config = {"alpha": alpha, "etas": list(args.etas), "order": args.order, "annulus_grid": args.annulus_grid}
    return config, rows, all(checks.values()), fit.slope_rel_error


def cmd_bounds(args):
    alpha = _alpha(args)
    tol = _tolerances(args)
    if alpha < 0.0:
        raise UsageError("pinching bounds are only claimed for 0 <= alpha < alpha_max")
    u_alpha = cone.largest_root(alpha, args.n)
    us = args.u or [u_alpha]
    for u in us:
        if u < u_alpha * (1.0 - 1e-12):
            raise UsageError(f"u={u!r} lies below u_alpha={u_alpha!r}")
    rows = []
    ok = True
    worst = 0.0
    for u in us:
        rep = planes.verify_bounds_by_sampling(alpha, args.n, u, args.samples, args.seed, tol=tol["bounds_tol"])
        attain = max(abs(rep.upper_plane_k - rep.upper), abs(rep.lower_plane_k - rep.lower))
        passed = rep.passed and attain <= tol["attain_tol"]
        ok &= passed
        worst = max(worst, attain, rep.observed_max - rep.upper, rep.lower - rep.observed_min, 0.0)
        rows.append(
            {
                "u": u,
                "lower": rep.lower,
                "upper": rep.upper,
                "sampled_min": rep.sampled_min,
                "sampled_max": rep.sampled_max,
                "observed_min": rep.observed_min,
                "observed_max": rep.observed_max,
                "upper_plane_k": rep.upper_plane_k,
                "lower_plane_k": rep.lower_plane_k,
                "pass": passed,
            }
        )
    config = {"alpha": alpha, "u_alpha": u_alpha}
    return config, rows, bool(ok), worst


def cmd_radial(args):
    alpha = _alpha(args)
    tol = _tolerances(args)
    if args.rmax <= 0 or args.step <= 0 or args.every < 1:
        raise UsageError("--rmax, --step and --every must be positive")
    profile = warp.einstein_profile(args.n, alpha)
    traj = warp.radial_profile(profile, args.rmax, args.step)
    res = np.array([warp.gh_ode_residual(f, f1, f2, args.n) for f, f1, f2 in zip(traj.f, traj.f1, traj.f2)])
    energy = warp.energy_defect(traj, profile)
    if not (np.all(np.isfinite(res)) and np.all(np.isfinite(traj.f))):
        raise NumericsError("non-finite values along the radial profile")
    worst = float(np.max(np.abs(res)))
    ok = worst <= tol["gh_tol"]
    cosh_gap = None
    if alpha == 0.0:
        cosh_gap = float(np.max(np.abs(traj.f - np.cosh(traj.r))))
        ok &= cosh_gap <= tol["cosh_tol"]
    idx = list(range(0, len(traj), args.every))
    if idx[-1] != len(traj) - 1:
        idx.append(len(traj) - 1)
    rows = [
        {
            "r": float(traj.r[i]),
            "f": float(traj.f[i]),
            "f1": float(traj.f1[i]),
            "f2": float(traj.f2[i]),
            "gh_residual": float(res[i]),
            "energy_defect": float(energy[i]),
        }
        for i in idx
    ]
    config = {"alpha": alpha, "u_alpha": profile.u_alpha, "cosh_gap": cosh_gap}
    return config, rows, bool(ok), worst


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def render_csv(rows) -> str:
    keys = []
    for row in rows:
        keys += [k for k in row if k not in keys]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys)
    for row in rows:
        w.writerow([_fmt(row.get(k)) for k in keys])
    return buf.getvalue()


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    return x


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        extra, rows, passed, max_error = args.func(args)
    except (UsageError, DegenerateError) as exc:
        print(f"warpcurv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericsError as exc:
        print(f"warpcurv: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICS
    except (WarpcurvError, ValueError) as exc:
        print(f"warpcurv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, FloatingPointError) as exc:
        print(f"warpcurv: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICS
    if max_error is not None and not math.isfinite(max_error):
        passed = False
        code = EXIT_NUMERICS
    else:
        code = EXIT_PASS if passed else EXIT_FAIL

    config = {"command": args.command, "n": args.n, "seed": args.seed}
    for key in ("grid", "samples", "eta", "rmax", "step"):
        if hasattr(args, key):
            config[key] = getattr(args, key)
    config["tolerances"] = _tolerances(args)
    config.update(extra)
    runtime = round(1000.0 * (time.perf_counter() - start), 3) if args.timing else None
    if args.format == "csv":
        text = render_csv(rows)
    else:
        doc = {"config": config, "results": rows, "pass": passed, "max_error": max_error, "runtime_ms": runtime}
        text = json.dumps(_jsonable(doc), indent=2) + "\n"
    _emit(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
