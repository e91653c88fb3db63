"""Cross-method comparison and the Green-operator check of the spectral function."""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np

from .core import DomainError, PolarPoint, WedgeError, WedgeProblem, go_discontinuities, spectral_s

__all__ = [
    "SlowDecay",
    "PairReport",
    "FIELD_METHODS",
    "COEFF_METHODS",
    "evaluate_field",
    "cross_compare",
    "choose_ray",
    "green_operator_s0",
    "plane_wave_operator",
]

EXACT = {"sdc", "series", "halfplane", "direct", "kl"}
APPROX = {"utd", "gtd"}
FIELD_METHODS = EXACT | APPROX | {"smirnov", "mc"}
COEFF_METHODS = {"gtd_D", "embedding_D"}


class SlowDecay(WedgeError):
    """w_z decays too slowly along the integration ray."""


@dataclass
class PairReport:
    pair: str
    max_abs_diff: float
    mean_abs_diff: float
    threshold: float | None
    passed: bool

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def evaluate_field(method: str, pt: PolarPoint, prob: WedgeProblem, mc_config=None):
    """Total field by the named method; 'mc' returns (value, std_error)."""
    from . import gtd, series, smirnov, sommerfeld

    if method == "sdc":
        return sommerfeld.phi_total(pt, prob).total
    if method == "series":
        return complex(series.phi_series(pt, prob))
    if method == "halfplane":
        return sommerfeld.phi_halfplane_fresnel(pt, prob)
    if method == "direct":
        return sommerfeld.phi_gamma_plus_direct(pt, prob)
    if method == "kl":
        return series.kl_inverse_numeric(pt, prob)
    if method == "gtd":
        return gtd.phi_gtd(pt, prob)
    if method == "utd":
        return gtd.phi_utd(pt, prob)
    if method == "smirnov":
        return smirnov.phi_from_time(pt, prob)
    if method == "mc":
        from .core import go_field
        from .randomwalk import McConfig, estimate_crossing

        est = estimate_crossing(pt, prob, mc_config or McConfig())
        kr = prob.k * float(pt.r)
        return go_field(pt, prob) + est.mean * np.exp(1j * kr), est.std_error
    raise DomainError(f"unknown method {method!r}")


def _coefficient(method, theta, theta_i, prob):
    if method == "gtd_D":
        from .gtd import diffraction_coefficient

        return diffraction_coefficient(theta, theta_i, prob)
    from .embedding import embed_diffraction_coefficient

    return embed_diffraction_coefficient(theta, theta_i, prob)


def _threshold(a: str, b: str, tol_override=None):
    pair = {a, b}
    if tol_override is not None:
        return tol_override
    if pair <= EXACT or pair <= COEFF_METHODS:
        return 1e-10 if pair <= COEFF_METHODS else 1e-6
    if "smirnov" in pair:
        return 5e-3
    if "mc" in pair:
        return "3sigma"
    return None  # informational


def cross_compare(points: list, prob: WedgeProblem, methods: set, *, tol_override: float | None = None,
                  mc_config=None) -> list[PairReport]:
    """Pairwise differences between methods on a list of points.

    Field methods take PolarPoint entries; the coefficient methods (gtd_D,
    embedding_D) take (theta, theta_i) tuples.  The MC pair passes when each
    difference is within max(0.05, 3 std_error).
    """
    methods = sorted(methods)
    if len(methods) < 2:
        raise DomainError("need at least two methods")
    coeff = set(methods) <= COEFF_METHODS
    if not coeff and not set(methods) <= FIELD_METHODS:
        raise DomainError("cannot mix field and coefficient methods")
    values, sigma = {}, None
    for m in methods:
        vals = []
        for p in points:
            if coeff:
                vals.append(_coefficient(m, p[0], p[1], prob))
            elif m == "mc":
                v, se = evaluate_field(m, p, prob, mc_config)
                vals.append(v)
                sigma = (sigma or []) + [se]
            else:
                vals.append(evaluate_field(m, p, prob))
        values[m] = np.asarray(vals, dtype=complex)
    out = []
    for a, b in itertools.combinations(methods, 2):
        diff = np.abs(values[a] - values[b])
        thr = _threshold(a, b, tol_override)
        if thr == "3sigma":
            lim = np.maximum(0.05, 3 * np.asarray(sigma))
            ok = bool(np.all(diff <= lim))
            thr = float(np.max(lim))
        else:
            ok = True if thr is None else bool(np.max(diff) <= thr)
        out.append(PairReport(f"{a}-{b}", float(np.max(diff)), float(np.mean(diff)), thr, ok))
    return out


def choose_ray(z: complex, prob: WedgeProblem, min_rate: float = 0.1, margin: float = 0.05) -> float:
    """Ray angle Theta in [-theta_w, theta_w] maximising Im cos(z - Theta).

    Only rays with |Re z - Theta| < pi are admitted, so the operator is the
    continuation of S_0 on the same branch.  Directions closer than
    ``margin`` to a GO discontinuity are avoided.
    """
    tw = prob.theta_w
    cand = np.linspace(-tw, tw, 2001)
    rate = np.imag(np.cos(z - cand))
    rate = np.where(np.abs(np.real(z) - cand) < math.pi, rate, -np.inf)
    disc = np.asarray(go_discontinuities(prob), dtype=float)
    if disc.size:
        far = np.min(np.abs(cand[:, None] - disc[None, :]), axis=1) > margin
        rate = np.where(far, rate, -np.inf)
    j = int(np.argmax(rate))
    if rate[j] < min_rate:
        raise SlowDecay(f"Im cos(z - Theta) < {min_rate} on every admissible ray")
    return float(cand[j])


def _nodes(r_max, kr_scale, n_ts=6, n_gl=24):
    """Tanh-sinh on [0, r0] for the algebraic behaviour at the tip, GL panels beyond."""
    r0 = min(1.0, r_max) / max(1.0, kr_scale)
    h = 2.0 ** -n_ts
    t = np.arange(-6.0 / h, 6.0 / h + 1) * h
    u = 0.5 * np.pi * np.sinh(t)
    x = 0.5 * (1 + np.tanh(u))
    w = h * 0.5 * np.pi * np.cosh(t) / np.cosh(u) ** 2 * 0.5
    keep = (x > 0) & (x < 1) & (w > 1e-300)
    r1, w1 = r0 * x[keep], r0 * w[keep]
    n_pan = max(1, int(math.ceil((r_max - r0) * max(1.0, kr_scale) / 1.5)))
    edges = np.linspace(r0, r_max, n_pan + 1)
    g, gw = np.polynomial.legendre.leggauss(n_gl)
    a, b = edges[:-1, None], edges[1:, None]
    r2 = (0.5 * (b - a) * g + 0.5 * (b + a)).ravel()
    w2 = (0.5 * (b - a) * gw).ravel()
    return np.concatenate([r1, r2]), np.concatenate([w1, w2])


def plane_wave_operator(z: complex, z_i: float, theta_ray: float, k: float = 1.0, r_max: float | None = None):
    """S_Theta(z)[w_{z_i}] by quadrature; equals tan((z_i - z)/2)."""
    phi = lambda r, th: np.exp(1j * k * r * np.cos(z_i - th))
    dphi = lambda r, th: 1j * k * r * np.sin(z_i - th) * phi(r, th)
    return _operator(z, theta_ray, k, phi, dphi, r_max)


def _operator(z, theta, k, phi, dphi, r_max):
    rate = float(np.imag(np.cos(z - theta)))
    if rate <= 0:
        raise SlowDecay("w_z does not decay along this ray")
    if r_max is None:
        r_max = math.log(1e10) / (k * rate)
    r, w = _nodes(r_max, k)
    wz = np.exp(1j * k * r * np.cos(z - theta))
    dwz = 1j * k * r * np.sin(z - theta) * wz
    f = (phi(r, theta) * dwz - dphi(r, theta) * wz) / r
    return complex(np.sum(w * f))


def green_operator_s0(z: complex, prob: WedgeProblem, r_max: float | None = None, quad=None,
                      theta_ray: float | None = None, h: float = 1e-4) -> complex:
    """S_0(z)[Phi] from the total field on a ray; s(z) = S_0(z)/2.

    The operator is taken on the ray theta = Theta.  For z where w_z grows
    on theta = 0 the ray is rotated (choose_ray) and the result is the
    analytic continuation of S_0.  d Phi/d theta uses the five-point stencil.
    """
    from .sommerfeld import phi_total

    theta = choose_ray(z, prob) if theta_ray is None else float(theta_ray)
    if not abs(theta) <= prob.theta_w:
        raise DomainError("ray must lie in the wedge exterior")
    rate = float(np.imag(np.cos(z - theta)))
    if rate < 0.1:
        raise SlowDecay(f"decay rate {rate:.3g} below 0.1 on the chosen ray")
    tw = prob.theta_w
    if abs(theta) + 2 * h > tw:
        # One-sided stencil at the faces.
        offs = np.array([0, -1, -2, -3, -4]) * h * np.sign(theta)
        wts = np.array([25, -48, 36, -16, 3]) / (12 * h) * np.sign(theta)
    else:
        offs = np.array([-2, -1, 1, 2]) * h
        wts = np.array([1, -8, 8, -1]) / (12 * h)

    def field(r, th):
        return np.array([phi_total(PolarPoint(float(x), th), prob, quad).total for x in np.atleast_1d(r)])

    def dfield(r, th):
        return sum(wt * field(r, th + o) for o, wt in zip(offs, wts))

    return _operator(z, theta, prob.k, field, dfield, r_max)


def connection_residual(z: complex, prob: WedgeProblem, **kw) -> float:
    return abs(0.5 * green_operator_s0(z, prob, **kw) - complex(spectral_s(z, prob)))
