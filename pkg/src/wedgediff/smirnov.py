"""Functionally-invariant (Sobolev-Smirnov) time-domain solution and its Fourier map.

Inside the diffraction disc r <= ct the step-response is U = Re V(z) with
z = (ct/r)(1 - sqrt(1 - (r/ct)^2)) e^{i theta}; writing t = (r/c) cosh s gives
z = e^{i theta - s}, and V(z) = Vt(xi) with xi = i z^delta.  Outside the disc
u is the geometrical-optics step field.

The harmonic field follows from Phi = -int u d/dt(e^{i omega t}) dt.  After an
integration by parts this is the sum of the GO jumps c_j e^{i omega t_j}
(exactly Phi_GO) plus int_{r/c}^inf U'(t) e^{i omega t} dt, and in the s
variable the latter is int_0^inf g(s) e^{ikr cosh s} ds with
g = Re[-delta xi Vt'(xi)].  Vt' is rational, so the integral may be taken either
along the real s axis with a damped frequency (and Richardson in the
damping) or along the steepest-descent path cosh s = 1 + i tau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, PolarPoint, QuadratureNotConverged, WedgeError, WedgeProblem, go_field

__all__ = [
    "OutsideDisc",
    "TimePoint",
    "RhData",
    "rh_data",
    "check_restriction",
    "z_map",
    "xi_of_z",
    "log_cut_positive",
    "v_tilde",
    "v_tilde_prime",
    "u_time",
    "u_incident",
    "phi_from_time",
]


class OutsideDisc(WedgeError):
    """The point lies outside the diffraction disc r <= ct."""


@dataclass(frozen=True)
class TimePoint:
    r: float
    theta: float
    t: float
    c: float = 1.0

    def __post_init__(self):
        if self.c <= 0:
            raise DomainError("wave speed must be positive")


@dataclass(frozen=True)
class RhData:
    a: complex
    b: complex


def rh_data(prob: WedgeProblem) -> RhData:
    d, ti = prob.delta, prob.theta_i
    a = np.exp(1j * (0.5 * np.pi - d * (np.pi - ti)))
    b = np.exp(1j * (1.5 * np.pi - d * (np.pi + ti)))
    return RhData(complex(a), complex(b))


def check_restriction(prob: WedgeProblem) -> None:
    lo, hi = math.pi - prob.theta_w, prob.theta_w - math.pi / 2
    if not (lo < prob.theta_i < hi):
        raise DomainError(f"theta_i must lie in ({lo:.6g}, {hi:.6g}) for the time-domain solution")


def z_map(tp: TimePoint) -> complex:
    """Self-similar variable of the diffraction disc; unit circle at r = ct."""
    ct = tp.c * tp.t
    if tp.r < 0 or ct <= 0 or tp.r > ct * (1 + 1e-15):
        raise OutsideDisc("z is defined for 0 <= r <= ct")
    q = min(tp.r / ct, 1.0)
    # (1 - sqrt(1 - q^2))/q written without cancellation.
    rad = q / (1 + math.sqrt(1 - q * q))
    return complex(rad * np.exp(1j * tp.theta))


def xi_of_z(z, prob: WedgeProblem):
    """xi = e^{i pi/2} z^delta with the principal branch of z^delta."""
    z = np.asarray(z, dtype=complex)
    out = 1j * np.exp(prob.delta * np.log(np.where(z == 0, 1e-300, z)))
    out = np.where(z == 0, 0.0, out)
    return out[()] if out.ndim == 0 else out


def log_cut_positive(w):
    """Logarithm with its cut along the positive real axis, arg in [0, 2 pi)."""
    w = np.asarray(w, dtype=complex)
    out = np.log(np.abs(w)) + 1j * np.mod(np.angle(w), 2 * np.pi)
    return out[()] if out.ndim == 0 else out


def v_tilde(xi, prob: WedgeProblem):
    check_restriction(prob)
    rh = rh_data(prob)
    a, b = rh.a, rh.b
    xi = np.asarray(xi, dtype=complex)
    l1 = log_cut_positive((np.conj(b) - xi) / (a - xi))
    l2 = log_cut_positive((np.conj(a) - xi) / (b - xi))
    if prob.dirichlet:
        out = (l1 - l2) / (np.pi * 1j)
    else:
        out = (l1 + l2) / (np.pi * 1j) - 2 * prob.delta
    return out[()] if out.ndim == 0 else out


def _vprime(xi, a, b, dirichlet):
    ab, bb = np.conj(a), np.conj(b)
    t1 = -1 / (bb - xi) + 1 / (a - xi)
    t2 = -1 / (ab - xi) + 1 / (b - xi)
    return (t1 - t2) / (np.pi * 1j) if dirichlet else (t1 + t2) / (np.pi * 1j)


def v_tilde_prime(xi, prob: WedgeProblem):
    """Derivative of v_tilde; a rational function, free of branch cuts."""
    rh = rh_data(prob)
    return _vprime(np.asarray(xi, dtype=complex), rh.a, rh.b, prob.dirichlet)


def u_incident(tp: TimePoint, prob: WedgeProblem) -> float:
    return float(tp.t + tp.r / tp.c * math.cos(tp.theta - prob.theta_i) > 0)


def _go_step(tp: TimePoint, prob: WedgeProblem) -> float:
    th, ti, tw = tp.theta, prob.theta_i, prob.theta_w
    rc = tp.r / tp.c
    val = 0.0
    if th > ti - math.pi:
        val += float(tp.t + rc * math.cos(th - ti) > 0)
    if th > 2 * tw - ti - math.pi:
        val += prob.sign * float(tp.t + rc * math.cos(th + ti - 2 * tw) > 0)
    return val


def u_time(tp: TimePoint, prob: WedgeProblem) -> float:
    """Step response u(r, theta, t): Re V inside the disc, GO steps outside."""
    check_restriction(prob)
    if abs(tp.theta) > prob.theta_w + 1e-12:
        raise DomainError("angle outside the wedge exterior")
    if tp.t > 0 and tp.r <= tp.c * tp.t:
        return float(np.real(v_tilde(xi_of_z(z_map(tp), prob), prob)))
    return _go_step(tp, prob)


def _g_of_s(s, theta, prob, rh):
    """Re[-delta xi Vt'(xi)] continued analytically in s."""
    d = prob.delta
    xi = 1j * np.exp(1j * d * theta - d * s)
    xc = -1j * np.exp(-1j * d * theta - d * s)  # conj(xi(conj s))
    f = -d * xi * _vprime(xi, rh.a, rh.b, prob.dirichlet)
    fc = -d * xc * np.conj(_vprime(np.conj(xc), rh.a, rh.b, prob.dirichlet))
    return 0.5 * (f + fc)


def _pole_distance(theta, prob, rh):
    """Distance from s = 0 to the nearest pole of g, which sits on the imaginary s axis.

    It is small only near a shadow boundary.
    """
    d = prob.delta
    per = 2 * math.pi / d
    best = math.inf
    for c in (rh.a, rh.b, np.conj(rh.a), np.conj(rh.b)):
        for x in (theta - np.angle(-1j * c) / d, theta + np.angle(1j * c) / d):
            best = min(best, abs(math.remainder(x, per)))
    return best


def _graded_edges(top, rho, base=0.25):
    """Panel edges on [0, top]: geometric towards 0 at scale rho, then steps of ``base``."""
    edges = [0.0]
    if rho < base:
        e = rho / 4
        while e < base and e < top:
            edges.append(e)
            e *= 2
    n = max(1, int(math.ceil((top - edges[-1]) / base)))
    edges.extend(np.linspace(edges[-1], top, n + 1)[1:])
    return np.asarray(edges)


def _diff_sdp(kr, theta, prob, rh, n=48):
    """Integral along cosh s = 1 + i tau, tau = v^2."""
    vmax = math.sqrt(40.0 / kr)
    # Near s = 0, |s| ~ sqrt(2) v.
    edges = _graded_edges(vmax, _pole_distance(theta, prob, rh) / math.sqrt(2))
    if edges.size < 5:
        edges = np.linspace(0.0, vmax, 5)
    x, w = np.polynomial.legendre.leggauss(n)
    a, b = edges[:-1, None], edges[1:, None]
    v = (0.5 * (b - a) * x + 0.5 * (b + a)).ravel()
    wv = (0.5 * (b - a) * w).ravel()
    s = np.arccosh(1 + 1j * v * v)
    # Keep the branch leaving s = 0 into the first quadrant.
    s = np.where(s.real < 0, -s, s)
    ds = 2j * v / np.sinh(s)
    val = np.sum(wv * _g_of_s(s, theta, prob, rh) * np.exp(1j * kr - kr * v * v) * ds)
    return complex(val)


def _diff_damped(kr, theta, prob, rh, eps_rel, n_per=16):
    """Integral along real s with kr -> kr(1 + i eps_rel); truncated where damping < 1e-12."""
    krd = kr * (1 + 1j * eps_rel)
    s_max = math.acosh(max(1.0, 28.0 / (kr * eps_rel)))
    # Panels fine enough to resolve the local phase rate kr sinh s, graded
    # towards s = 0 when a pole of g comes close to the path.
    rho = _pole_distance(theta, prob, rh)
    edges = list(_graded_edges(min(s_max, 0.25), rho)) if rho < 0.25 else [0.0]
    while edges[-1] < s_max:
        s0 = edges[-1]
        h = min(0.25, 1.5 / (kr * math.sinh(s0 + 0.25) + 1e-12))
        edges.append(min(s_max, s0 + h))
    e = np.asarray(edges)
    x, w = np.polynomial.legendre.leggauss(n_per)
    # sqrt-type behaviour at s = 0 is absent in s (smooth), so plain panels suffice.
    a, b = e[:-1, None], e[1:, None]
    s = (0.5 * (b - a) * x + 0.5 * (b + a)).ravel()
    ws = (0.5 * (b - a) * w).ravel()
    return complex(np.sum(ws * _g_of_s(s, theta, prob, rh) * np.exp(1j * krd * np.cosh(s))))


def phi_from_time(pt: PolarPoint, prob: WedgeProblem, c: float = 1.0, eps_damping: float | None = None,
                  t_grid_spec: dict | None = None, method: str = "damped") -> complex:
    """Harmonic field from the step response.

    method="damped": real-time quadrature with omega -> omega + i eps and a
    Richardson step eps, eps/2 (eps defaults to 0.02 k).  method="sdp": the
    same integral on the steepest-descent path, no damping needed.
    """
    check_restriction(prob)
    pt.check(prob)
    if pt.r <= 0:
        raise DomainError("r must be positive")
    rh = rh_data(prob)
    kr = prob.k * float(pt.r)
    theta = float(pt.theta)
    go = go_field(pt, prob)
    if method == "sdp":
        return go + _diff_sdp(kr, theta, prob, rh)
    if method != "damped":
        raise DomainError(f"unknown method {method!r}")
    spec = dict(n_per=16, levels=3)
    spec.update(t_grid_spec or {})
    eps = 0.02 * prob.k if eps_damping is None else float(eps_damping)
    # omega -> omega + i eps, i.e. kr -> kr (1 + i eps c / (c k)) in the phase.
    eps_rel = eps / prob.k
    vals = []
    for j in range(spec["levels"]):
        e = eps_rel / 2**j
        # GO jumps carry the same damping, e^{i omega t_j} -> e^{i(omega + i eps) t_j}.
        go_d = _damped_go(pt, prob, e)
        vals.append(go_d + _diff_damped(kr, theta, prob, rh, e, spec["n_per"]))
    # Richardson on a geometric sequence of damping values (error ~ eps).
    table = [vals]
    for lev in range(1, len(vals)):
        prev = table[-1]
        fac = 2.0**lev
        table.append([(fac * prev[i + 1] - prev[i]) / (fac - 1) for i in range(len(prev) - 1)])
    est = table[-1][0]
    if abs(table[-1][0] - table[-2][-1]) > 5e-2:
        raise QuadratureNotConverged("damping extrapolation did not settle")
    return complex(est)


def _damped_go(pt: PolarPoint, prob: WedgeProblem, eps_rel: float) -> complex:
    from .core import go_poles_in_window

    kr = prob.k * pt.r * (1 + 1j * eps_rel)
    return complex(sum(t.residue * np.exp(-1j * kr * math.cos(t.pole_angle - pt.theta))
                       for t in go_poles_in_window(pt.theta, prob)))
