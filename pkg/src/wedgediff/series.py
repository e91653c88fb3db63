"""Bessel-series solutions (plane wave and line source) and K-L transform formulas."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, PolarPoint, QuadratureNotConverged, WedgeProblem
from .specfun import UNDERFLOW, bessel_j, bessel_j_complex_order, hankel1

__all__ = [
    "SeriesSpec",
    "LineSource",
    "phi_series",
    "phi_line_source_series",
    "line_source_coefficients",
    "plane_wave_amplitude",
    "plane_wave_limit_check",
    "plane_wave_limit",
    "kl_boundary_data",
    "kl_psi",
    "kl_inverse_numeric",
]


@dataclass(frozen=True)
class SeriesSpec:
    n_terms: int = 100
    underflow_cutoff: float = UNDERFLOW

    def __post_init__(self):
        if self.n_terms < 1:
            raise DomainError("n_terms must be at least 1")


@dataclass(frozen=True)
class LineSource:
    r_i: float
    theta_i: float
    amplitude: complex = 1.0

    def __post_init__(self):
        if self.r_i <= 0:
            raise DomainError("source radius must be positive")


def _neg_i_pow(nu):
    """(-i)^nu on the principal branch, e^{-i pi nu / 2}."""
    return np.exp(-0.5j * np.pi * np.asarray(nu))


def _truncate(terms, partial, cutoff):
    """Drop the tail once three consecutive terms are negligible."""
    small = np.abs(terms) < cutoff * (1.0 + np.abs(partial))
    run = np.convolve(small.astype(int), np.ones(3, dtype=int), mode="valid")
    hit = np.nonzero(run == 3)[0]
    return terms if hit.size == 0 else terms[: hit[0]]


def phi_series(pt: PolarPoint, prob: WedgeProblem, spec: SeriesSpec | None = None):
    """Total field from the eigenfunction series, truncated at spec.n_terms."""
    spec = spec or SeriesSpec()
    r = float(pt.r)
    theta = np.asarray(pt.theta, dtype=float)
    d, tw, ti, kr = prob.delta, prob.theta_w, prob.theta_i, prob.k * r
    if kr == 0.0:
        val = 0.0 if prob.dirichlet else 2 * d
        return complex(val) if theta.ndim == 0 else np.full(theta.shape, complex(val))
    n = np.arange(1, spec.n_terms + 1)
    nu = d * n
    amp = _neg_i_pow(nu) * bessel_j(nu, kr)
    amp = _truncate(amp, 0.0, spec.underflow_cutoff)
    nu = nu[: amp.size]
    th = theta[..., None]
    ang = np.cos((th - ti) * nu) + prob.sign * np.cos((th - 2 * tw + ti) * nu)
    out = 2 * d * np.sum(amp * ang, axis=-1)
    if not prob.dirichlet:
        out = out + 2 * d * bessel_j(0.0, kr)
    return complex(out) if np.ndim(out) == 0 else out


def plane_wave_amplitude(r_i: float, k: float) -> complex:
    """Source strength that turns a far line source into a unit plane wave."""
    return math.sqrt(8 * math.pi * k * r_i) * cmath.exp(-1j * k * r_i + 0.75j * math.pi)


def line_source_coefficients(prob: WedgeProblem, src: LineSource, n):
    """Coefficients A_n (Dirichlet) or B_n (Neumann) multiplying J(kr_<)H(kr_>)."""
    d, tw = prob.delta, prob.theta_w
    n = np.asarray(n, dtype=float)
    if prob.dirichlet:
        return -1j * d * src.amplitude * np.sin((src.theta_i - tw) * d * n)
    eps = np.where(n == 0, 0.5, 1.0)
    return -1j * eps * d * src.amplitude * np.cos((tw - src.theta_i) * d * n)


def phi_line_source_series(pt: PolarPoint, prob: WedgeProblem, src: LineSource,
                           spec: SeriesSpec | None = None):
    """Field of a line source at (r_i, theta_i) as a Bessel-Hankel series."""
    spec = spec or SeriesSpec()
    r = float(pt.r)
    theta = np.asarray(pt.theta, dtype=float)
    if r == src.r_i:
        raise DomainError("the line-source series is not evaluated on the source circle")
    d, tw, k = prob.delta, prob.theta_w, prob.k
    r_lo, r_hi = min(r, src.r_i), max(r, src.r_i)
    n = np.arange(1 if prob.dirichlet else 0, spec.n_terms + 1)
    nu = d * n
    coef = line_source_coefficients(prob, src, n)
    jh = (bessel_j(nu, k * r_lo) if r_lo > 0 else (nu == 0).astype(float)) * hankel1(nu, k * r_hi)
    jh = np.nan_to_num(jh)
    ang = (np.sin if prob.dirichlet else np.cos)((theta[..., None] - tw) * nu)
    out = np.sum(coef * jh * ang, axis=-1)
    return complex(out) if np.ndim(out) == 0 else out


def plane_wave_limit(prob: WedgeProblem, n: int) -> complex:
    """Limit of A_n H_{delta n}(k r_i) as the source recedes."""
    d, tw, ti = prob.delta, prob.theta_w, prob.theta_i
    nu = d * n
    if prob.dirichlet:
        return complex(4 * d * _neg_i_pow(nu) * math.sin((ti - tw) * nu))
    eps = 0.5 if n == 0 else 1.0
    return complex(4 * eps * d * _neg_i_pow(nu) * math.cos((tw - ti) * nu))


def plane_wave_limit_check(prob: WedgeProblem, n: int, r_i_list):
    """A_n H^(1)_{delta n}(k r_i) for each source radius with the plane-wave strength."""
    out = []
    for r_i in r_i_list:
        src = LineSource(r_i, prob.theta_i, plane_wave_amplitude(r_i, prob.k))
        a = line_source_coefficients(prob, src, n)
        out.append(complex(a * hankel1(prob.delta * n, prob.k * r_i)))
    return out


def kl_boundary_data(nu, prob: WedgeProblem, face: str):
    """Transformed boundary data on the top (+) or bottom (-) face."""
    nu = np.asarray(nu, dtype=complex)
    if np.any(np.abs(nu - np.round(nu.real)) < 1e-14):
        raise DomainError("boundary data are singular at integer order")
    if face not in ("top", "bottom"):
        raise DomainError("face must be 'top' or 'bottom'")
    sg = 1 if face == "top" else -1
    c = prob.theta_w - sg * prob.theta_i - math.pi
    pre = 2 * np.exp(-0.5j * np.pi * (1 + nu)) / np.sin(np.pi * nu)
    if prob.dirichlet:
        out = pre * np.cos(c * nu) / nu
    else:
        out = -sg * pre * np.sin(c * nu)
    return out[()] if out.ndim == 0 else out


def kl_psi(nu, theta, prob: WedgeProblem):
    """K-L transform of the scattered field at angle theta."""
    nu = np.asarray(nu, dtype=complex)
    tw = prob.theta_w
    den = np.sin(2 * tw * nu)
    if np.any(np.abs(den) < 1e-14):
        raise DomainError("nu is an eigen-order of the wedge")
    top = kl_boundary_data(nu, prob, "top")
    bot = kl_boundary_data(nu, prob, "bottom")
    if prob.dirichlet:
        out = (bot * np.sin((tw - theta) * nu) + top * np.sin((tw + theta) * nu)) / den
    else:
        out = (bot * np.cos((tw - theta) * nu) - top * np.cos((tw + theta) * nu)) / (nu * den)
    return out[()] if out.ndim == 0 else out


def kl_inverse_numeric(pt: PolarPoint, prob: WedgeProblem, eps: float = 1e-3, t_max: float | None = None,
                       n_nodes: int = 800, richardson: bool = True) -> complex:
    """Inverse K-L transform along the imaginary axis plus the incident wave.

    The integrand has a simple pole at nu = 0 on the path; it is taken in the
    principal-value sense by pairing nu = iy with nu = -iy.  The factor
    e^{eps nu^2} biases the result by O(eps); with ``richardson`` the values
    at eps and eps/2 are combined to cancel that term.  t_max defaults to the
    point where e^{-eps y^2} has fallen below e^{-28} (at least 40).
    """
    if pt.r <= 0 or eps <= 0:
        raise DomainError("need r > 0 and eps > 0")
    if richardson:
        a = kl_inverse_numeric(pt, prob, eps, t_max, n_nodes, richardson=False)
        b = kl_inverse_numeric(pt, prob, 0.5 * eps, t_max, n_nodes, richardson=False)
        return 2 * b - a
    if t_max is None:
        # sin(2 theta_w nu) overflows once 2 theta_w y passes ~700.
        t_max = min(200.0, 350.0 / prob.theta_w, max(40.0, math.sqrt(28.0 / eps)))
    kr = prob.k * float(pt.r)
    theta = float(pt.theta)

    def paired(y):
        nu = 1j * y
        f = lambda v: np.exp(eps * v * v) * v * bessel_j_complex_order(v, kr) * kl_psi(v, theta, prob)
        return 1j * (f(nu) + f(-nu))

    def quad(n):
        # Panels of width <= 0.5 on (0, T]; Gauss nodes never hit y = 0.
        edges = np.linspace(0.0, t_max, int(math.ceil(t_max / 0.5)) + 1)
        x, w = np.polynomial.legendre.leggauss(n)
        a, b = edges[:-1, None], edges[1:, None]
        y = (0.5 * (b - a) * x + 0.5 * (b + a)).ravel()
        ww = (0.5 * (b - a) * w).ravel()
        return 0.5 * np.sum(ww * paired(y))

    lo = quad(max(8, n_nodes // 160))
    hi = quad(max(16, n_nodes // 80))
    if abs(lo - hi) > 1e-6 * max(1.0, abs(hi)):
        raise QuadratureNotConverged(f"K-L inverse quadrature difference {abs(lo - hi):.2e}")
    inc = np.exp(-1j * kr * math.cos(theta - prob.theta_i))
    return complex(hi + inc)
