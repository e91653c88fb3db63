"""Command-line interface: field sweeps, figure data, validation report."""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from .core import BC, DomainError, PolarPoint, WedgeError, WedgeProblem, go_field

__all__ = ["main", "parse_angle", "build_parser"]

FIELD_HEADER = ["theta", "re_total", "im_total", "re_go", "im_go", "re_diff", "im_diff", "est_error"]
METHODS = ["sdc", "series", "gtd", "utd", "kl", "mc", "smirnov", "halfplane"]
FIGURES = ["fig1", "fig2", "fig3", "fig4", "fig6", "fig7", "fig8", "fig9", "fig13"]

_PI_FORM = re.compile(r"^\s*([+-]?\d*(?:\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$", re.IGNORECASE)


def parse_angle(text: str) -> float:
    """Accept plain radians or a*pi/b forms such as 7pi/8, -pi/2, 0.3pi."""
    m = _PI_FORM.match(text)
    if m:
        num, den = m.group(1), m.group(2)
        if num in ("", "+"):
            num = "1"
        elif num == "-":
            num = "-1"
        frac = Fraction(num) / Fraction(int(den) if den else 1)
        if frac.denominator == 1:
            return frac.numerator * math.pi
        return frac.numerator * math.pi / frac.denominator
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _problem(args) -> WedgeProblem:
    return WedgeProblem(args.theta_w, args.theta_i, args.k, BC.parse(args.bc))


def _eval_point(job):
    method, prob, r, theta, seed, n_paths, dt = job
    from . import gtd, series, smirnov, sommerfeld

    pt = PolarPoint(r, theta)
    go = go_field(pt, prob)
    err, extra = float("nan"), []
    if method == "sdc":
        res = sommerfeld.phi_total(pt, prob)
        total, err = res.total, res.est_error
    elif method == "series":
        total = complex(series.phi_series(pt, prob))
    elif method == "gtd":
        total = gtd.phi_gtd(pt, prob)
    elif method == "utd":
        total = gtd.phi_utd(pt, prob)
    elif method == "kl":
        total = series.kl_inverse_numeric(pt, prob)
    elif method == "smirnov":
        total = smirnov.phi_from_time(pt, prob)
    elif method == "halfplane":
        total = sommerfeld.phi_halfplane_fresnel(pt, prob)
    elif method == "mc":
        from .randomwalk import McConfig, estimate_crossing

        est = estimate_crossing(pt, prob, McConfig(dt=dt, n_paths=n_paths, seed=seed))
        total = go + est.mean * np.exp(1j * prob.k * r)
        err = est.std_error
        extra = [str(seed), _fmt(est.std_error)]
    else:
        raise DomainError(f"unknown method {method}")
    diff = total - go
    row = [_fmt(theta), _fmt(total.real), _fmt(total.imag), _fmt(go.real), _fmt(go.imag),
           _fmt(diff.real), _fmt(diff.imag), _fmt(err)]
    return row + extra


def _run_jobs(jobs, n_workers):
    if n_workers <= 1:
        return [_eval_point(j) for j in jobs]
    with ProcessPoolExecutor(n_workers) as ex:
        return list(ex.map(_eval_point, jobs, chunksize=8))


def cmd_field(args) -> int:
    prob = _problem(args)
    if args.n < 1:
        raise DomainError("--n must be at least 1")
    thetas = np.linspace(args.theta_min, args.theta_max, args.n) if args.n > 1 else np.array([args.theta_min])
    jobs = [(args.method, prob, args.r, float(t), args.seed, args.paths, args.dt) for t in thetas]
    rows = _run_jobs(jobs, args.jobs)
    header = FIELD_HEADER + (["seed", "std_error"] if args.method == "mc" else [])
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if args.out:
            out.close()
    return 0


# ---------------------------------------------------------------- replicate

def _sweep(prob, kr, n=361, pad=1e-6):
    th = np.linspace(-prob.theta_w, prob.theta_w, n)
    from .core import go_discontinuities

    for d in go_discontinuities(prob):
        th = np.where(np.abs(th - d) < pad, th + 2 * pad, th)
    return th, kr / prob.k


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows([[_fmt(v) if isinstance(v, (float, np.floating)) else v for v in row] for row in rows])


def _rep_fig67(outdir: Path, theta_i: float, tag: str):
    from .gtd import phi_gtd, phi_utd
    from .sommerfeld import phi_total

    files = []
    for bc in (BC.DIRICHLET, BC.NEUMANN):
        for kr in (1, 5, 10):
            prob = WedgeProblem(7 * math.pi / 8, theta_i, 1.0, bc)
            th, r = _sweep(prob, kr)
            rows = []
            for t in th:
                pt = PolarPoint(r, float(t))
                ex = phi_total(pt, prob).total
                rows.append([float(t), ex.real, phi_gtd(pt, prob).real, phi_utd(pt, prob).real])
            p = outdir / f"{tag}_{bc.value}_kr{kr}.csv"
            _write_csv(p, ["theta", "re_exact", "re_gtd", "re_utd"], rows)
            files.append(p)
    return files


def _rep_fig8(outdir: Path):
    from .gtd import phi_gtd, phi_utd
    from .sommerfeld import phi_total

    prob = WedgeProblem(7 * math.pi / 8, 0.0, 1.0, BC.DIRICHLET)
    files = []
    for kr in (1, 5, 10, 25):
        th, r = _sweep(prob, kr, pad=1e-3)
        rows = []
        for t in th:
            pt = PolarPoint(r, float(t))
            ex = phi_total(pt, prob).total
            rows.append([float(t), abs(phi_gtd(pt, prob) - ex), abs(phi_utd(pt, prob) - ex)])
        p = outdir / f"fig8_kr{kr}.csv"
        _write_csv(p, ["theta", "err_gtd", "err_utd"], rows)
        files.append(p)
    return files


def _rep_fig9(outdir: Path):
    from .gtd import phi_utd
    from .series import phi_series

    tw = 35 * math.pi / 36
    files = []
    for bc in (BC.DIRICHLET, BC.NEUMANN):
        prob = WedgeProblem(tw, tw - math.pi / 2, 1.0, bc)
        th, r = _sweep(prob, 10 * math.pi, n=181, pad=1e-3)
        rows = []
        for t in th:
            pt = PolarPoint(r, float(t))
            ex = complex(phi_series(pt, prob))
            u = phi_utd(pt, prob)
            rows.append([float(t), ex.real, ex.imag, u.real, u.imag])
        p = outdir / f"fig9_{bc.value}.csv"
        _write_csv(p, ["theta", "re_series", "im_series", "re_utd", "im_utd"], rows)
        files.append(p)
    return files


def _rep_fig13(outdir: Path, n_r=30, n_t=61):
    from .gtd import phi_utd
    from .sommerfeld import phi_total

    files = []
    for theta_i, tag in ((0.0, "0"), (math.pi / 2, "pi2")):
        for bc in (BC.DIRICHLET, BC.NEUMANN):
            prob = WedgeProblem(7 * math.pi / 8, theta_i, 2.0, bc)
            th, _ = _sweep(prob, 1.0, n=n_t, pad=1e-3)
            rows = []
            for r in np.linspace(0.1, 3.0, n_r):
                for t in th:
                    pt = PolarPoint(float(r), float(t))
                    ex = phi_total(pt, prob).total
                    u = phi_utd(pt, prob)
                    rows.append([float(r), float(t), ex.real, ex.imag, u.real, u.imag])
            p = outdir / f"fig13_thetaI{tag}_{bc.value}.csv"
            _write_csv(p, ["r", "theta", "re_exact", "im_exact", "re_utd", "im_utd"], rows)
            files.append(p)
    return files


def _portraits(fig: str):
    from .core import spectral_s
    from .wienerhopf import ImageGrid, f1_factors, f_kernels, eta_of_alpha

    prob = WedgeProblem(7 * math.pi / 8, 0.0, 1.0, BC.DIRICHLET)
    win = ImageGrid(-3, 3, -3, 3, 256, 256)
    if fig == "fig1":
        return {"identity": (lambda z: z, ImageGrid(-1, 1, -1, 1, 257, 257))}
    if fig == "fig2":
        return {"spectral_s": (lambda z: spectral_s(z, prob, 0.0), ImageGrid(-8, 8, -4, 4, 384, 192))}
    eta = lambda a: eta_of_alpha(a, prob)
    if fig == "fig3":
        return {"eta": (eta, win), "eta_minus_alpha": (lambda a: eta_of_alpha(-a, prob), win)}
    ker = lambda a, i: f_kernels(eta_of_alpha(a, prob), prob)[i]
    return {
        "eta": (eta, win),
        "f1": (lambda a: ker(a, 0), win),
        "f2": (lambda a: ker(a, 1), win),
        "f3": (lambda a: ker(a, 2), win),
        "f1_minus": (lambda a: f1_factors(a, prob)[0], win),
        "f1_plus": (lambda a: f1_factors(a, prob)[1], win),
    }


def _safe_map(f):
    def g(z):
        out = np.full(np.shape(z), np.nan + 0j)
        flat = np.ravel(z)
        res = np.empty(flat.size, dtype=complex)
        for i, zz in enumerate(flat):
            try:
                res[i] = complex(f(zz))
            except Exception:
                res[i] = complex("nan")
        out[...] = res.reshape(np.shape(z))
        return out

    return g


def _rep_portrait(outdir: Path, fig: str):
    from .wienerhopf import phase_portrait, write_ppm

    files = []
    for name, (f, grid) in _portraits(fig).items():
        try:
            with np.errstate(all="ignore"):
                img = phase_portrait(f, grid)
        except WedgeError:
            img = phase_portrait(_safe_map(f), grid)
        p = outdir / f"{fig}_{name}.ppm"
        write_ppm(img, p)
        files.append(p)
    return files


def cmd_replicate(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    fig = args.figure
    if fig in ("fig1", "fig2", "fig3", "fig4"):
        files = _rep_portrait(outdir, fig)
    elif fig == "fig6":
        files = _rep_fig67(outdir, 0.0, "fig6")
    elif fig == "fig7":
        files = _rep_fig67(outdir, math.pi / 2, "fig7")
    elif fig == "fig8":
        files = _rep_fig8(outdir)
    elif fig == "fig9":
        files = _rep_fig9(outdir)
    else:
        files = _rep_fig13(outdir)
    for f in files:
        print(f)
    return 0


# ---------------------------------------------------------------- validate

def validation_suites(quick: bool = False, tol_override: float | None = None):
    """Run the cross-method suites; returns a list of JSON-ready dicts."""
    from .harness import cross_compare, green_operator_s0
    from .core import spectral_s

    reports = []
    n = 25 if quick else 91
    tw = 7 * math.pi / 8
    for bc in (BC.DIRICHLET, BC.NEUMANN):
        for ti in (0.0, math.pi / 2):
            prob = WedgeProblem(tw, ti, 1.0, bc)
            th, _ = _sweep(prob, 1.0, n=n, pad=1e-3)
            for kr in ((5,) if quick else (1, 5, 10)):
                pts = [PolarPoint(float(kr), float(t)) for t in th]
                for rep in cross_compare(pts, prob, {"sdc", "series"}, tol_override=tol_override):
                    d = rep.to_json()
                    d["pair"] += f" [{bc.value}, theta_i={ti:.4g}, kr={kr}]"
                    reports.append(d)
        half = WedgeProblem(math.pi, 0.7, 1.0, bc)
        pts = [PolarPoint(3.0, float(t)) for t in np.linspace(-3.1, 3.1, n)]
        for rep in cross_compare(pts, half, {"sdc", "halfplane"}, tol_override=tol_override):
            d = rep.to_json()
            d["pair"] += f" [{bc.value}]"
            reports.append(d)
        sm = WedgeProblem(tw, 0.3 * math.pi, 2.0, bc)
        pts = [PolarPoint(1.0, t) for t in ((0.0,) if quick else (0.0, 1.0, -0.5, 2.5, -2.0))]
        for rep in cross_compare(pts, sm, {"sdc", "smirnov"}, tol_override=tol_override):
            d = rep.to_json()
            d["pair"] += f" [{bc.value}]"
            reports.append(d)
        zs = [0.4 + 0.8j] if quick else [0.4 + 0.8j, -0.4 + 0.8j, 1.2 + 0.5j]
        gp = WedgeProblem(tw, 0.0, 1.0, bc)
        errs = [abs(0.5 * green_operator_s0(z, gp) - complex(spectral_s(z, gp))) for z in zs]
        thr = 1e-3 if tol_override is None else tol_override
        reports.append({"pair": f"green_operator-spectral_s [{bc.value}]", "max_abs_diff": max(errs),
                        "mean_abs_diff": float(np.mean(errs)), "threshold": thr, "pass": max(errs) <= thr})
    prob = WedgeProblem(tw, 0.0, 1.0, BC.DIRICHLET)
    grid = np.linspace(-tw + 0.05, tw - 0.05, 8 if quick else 20)
    incid = np.linspace(0.0, tw - 0.05, 5 if quick else 12)
    pts = [(float(a), float(b)) for a in grid for b in incid]
    pts = [p for p in pts if _regular_direction(p, prob)]
    for rep in cross_compare(pts, prob, {"gtd_D", "embedding_D"}, tol_override=tol_override):
        reports.append(rep.to_json())
    return reports


def _regular_direction(p, prob, margin=1e-2):
    from .core import go_discontinuities

    th, ti = p
    return all(abs(th - d) > margin for d in go_discontinuities(prob.with_(theta_i=ti)))


def cmd_validate(args) -> int:
    t0 = time.time()
    reports = validation_suites(args.quick, args.inject_tol)
    ok = all(r["pass"] for r in reports)
    doc = {"reports": reports, "pass": ok, "seconds": round(time.time() - t0, 2)}
    text = json.dumps(doc, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wedgediff", description="Diffraction by a wedge: evaluation and checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("field", help="evaluate the field on an angular sweep (CSV)")
    f.add_argument("--theta-w", type=parse_angle, required=True)
    f.add_argument("--theta-i", type=parse_angle, default=0.0)
    f.add_argument("--k", type=float, default=1.0)
    f.add_argument("--bc", choices=[b.value for b in BC], default="dirichlet")
    f.add_argument("--method", choices=METHODS, default="sdc")
    f.add_argument("--r", type=float, default=1.0)
    f.add_argument("--theta-min", type=parse_angle, default=None)
    f.add_argument("--theta-max", type=parse_angle, default=None)
    f.add_argument("--n", type=int, default=181)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--paths", type=int, default=2000)
    f.add_argument("--dt", type=float, default=0.01)
    f.add_argument("--jobs", type=int, default=1)
    f.add_argument("--out", default=None)
    f.set_defaults(func=cmd_field)

    r = sub.add_parser("replicate", help="write figure data (CSV or PPM)")
    r.add_argument("figure", choices=FIGURES)
    r.add_argument("--outdir", default="figures")
    r.set_defaults(func=cmd_replicate)

    v = sub.add_parser("validate", help="run the cross-method checks (JSON)")
    v.add_argument("--quick", action="store_true")
    v.add_argument("--out", default=None)
    v.add_argument("--inject-tol", type=float, default=None, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "field":
        if args.theta_min is None:
            args.theta_min = -args.theta_w
        if args.theta_max is None:
            args.theta_max = args.theta_w
    try:
        return args.func(args)
    except DomainError as e:
        print(f"wedgediff: error: {e}", file=sys.stderr)
        return 2
    except (WedgeError, ArithmeticError, NotImplementedError) as e:
        print(f"wedgediff: numerical failure: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
