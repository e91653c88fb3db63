"""Edge Green's function directivities and the embedding formula (Dirichlet)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, WedgeError, WedgeProblem
from .specfun import gamma_fn, hankel1

__all__ = [
    "NotRational",
    "DenominatorSingular",
    "RationalAngle",
    "rational_of",
    "directivity_hat",
    "edge_green",
    "pochhammer_falling",
    "embed_diffraction_coefficient",
]


class NotRational(WedgeError):
    """2 theta_w is not a rational multiple of pi within tolerance."""


class DenominatorSingular(WedgeError):
    """Vanishing Chebyshev denominator of the embedding formula."""


@dataclass(frozen=True)
class RationalAngle:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1 or math.gcd(self.p, self.q) != 1:
            raise DomainError("p, q must be coprime positive integers")


def rational_of(theta_w: float, max_den: int = 64, tol: float = 1e-12) -> RationalAngle:
    """Fraction q/p with 2 theta_w = q pi / p, smallest denominator first."""
    if max_den > 64:
        raise DomainError("max_den is limited to 64")
    x = 2 * theta_w / math.pi
    for p in range(1, max_den + 1):
        q = round(x * p)
        if q >= 1 and abs(2 * theta_w - q * math.pi / p) < tol and math.gcd(p, q) == 1:
            return RationalAngle(p, q)
    raise NotRational(f"2 theta_w = {2 * theta_w} is not q pi / p with p <= {max_den}")


def directivity_hat(m: int, theta, prob: WedgeProblem):
    """Far-field amplitude of the m-th edge Green's function."""
    if m < 1:
        raise DomainError("m must be at least 1")
    nu = m * prob.delta
    amp = math.sqrt(2 * math.pi) * (prob.k / 2) ** nu * np.exp(-0.5j * np.pi * nu) / gamma_fn(nu)
    ang = nu * (np.asarray(theta, dtype=float) + prob.theta_w)
    out = amp * (np.sin(ang) if prob.dirichlet else np.cos(ang))
    return out[()] if np.ndim(out) == 0 else out


def edge_green(m: int, r, theta, prob: WedgeProblem):
    """Exact edge Green's function (pi i / Gamma(nu)) (k/2)^nu H_nu(kr) sin(nu (theta + theta_w))."""
    nu = m * prob.delta
    ang = nu * (np.asarray(theta, dtype=float) + prob.theta_w)
    fac = np.sin(ang) if prob.dirichlet else np.cos(ang)
    return np.pi * 1j / gamma_fn(nu) * (prob.k / 2) ** nu * hankel1(nu, prob.k * np.asarray(r)) * fac


def pochhammer_falling(x: float, p: int) -> float:
    """x (x - 1) ... (x - p + 1)."""
    out = 1.0
    for j in range(p):
        out *= x - j
    return out


# Normalisation that makes the sum reproduce e^{i pi/4}/sqrt(2 pi)[s(theta-pi) - s(theta+pi)].
_NORM = -math.sqrt(2 * math.pi) * complex(math.cos(math.pi / 4), math.sin(math.pi / 4))


def _denominator(theta, theta_i, prob, ra, literal=False):
    p = ra.p
    if literal:
        return math.cos(p * theta) - (-1) ** p * math.cos(p * theta_i)
    tw = prob.theta_w
    return math.cos(p * (theta + tw)) - (-1) ** p * math.cos(p * (theta_i + tw))


def _embed_raw(theta, theta_i, prob, ra, literal=False):
    p, q = ra.p, ra.q
    k = prob.k
    den = _denominator(theta, theta_i, prob, ra, literal)
    pref = (-1) ** (q - p + 1) if literal else _NORM
    total = 0j
    for m in range(1, q):
        nu = m * prob.delta
        c = pref * pochhammer_falling(nu, p) / (m * math.pi * (0.5j * k) ** p * den)
        total += c * directivity_hat(m, theta_i, prob) * directivity_hat(q - m, theta, prob)
    return total, den


def embed_diffraction_coefficient(theta: float, theta_i: float, prob: WedgeProblem,
                                  ra: RationalAngle | None = None, *, singular_tol: float = 1e-9,
                                  literal: bool = False, return_flag: bool = False):
    """Diffraction coefficient from the embedding formula (Dirichlet only).

    The default form measures the angles in the Chebyshev denominator from
    the lower face (phi = theta + theta_w) and carries the constant
    -sqrt(2 pi) e^{i pi/4}; with that, the sum equals the spectral D for
    every rational angle.  ``literal=True`` evaluates the formula with
    angles from the bisector and the (-1)^(q-p+1) prefactor, which agrees
    with the spectral D only up to an angle-dependent factor when q is odd.

    At directions where the denominator vanishes the value is extrapolated
    from symmetric offsets +-h, +-2h, +-3h; the optional flag reports that this happened.
    """
    if not prob.dirichlet:
        raise NotImplementedError("the embedding formula is implemented for Dirichlet only")
    ra = ra or rational_of(prob.theta_w)
    if abs(2 * prob.theta_w - ra.q * math.pi / ra.p) > 1e-12:
        raise DomainError("rational angle does not match theta_w")
    if abs(_denominator(theta, theta_i, prob, ra, literal)) > singular_tol:
        val, _ = _embed_raw(theta, theta_i, prob, ra, literal)
        return (complex(val), False) if return_flag else complex(val)
    h = 1e-3
    ev = lambda t: _embed_raw(t, theta_i, prob, ra, literal)[0]
    v = [0.5 * (ev(theta + j * h) + ev(theta - j * h)) for j in (1, 2, 3)]
    # Symmetric averages are even in h; eliminate the h^2 and h^4 terms.
    out = complex(1.5 * v[0] - 0.6 * v[1] + 0.1 * v[2])
    return (out, True) if return_flag else out
