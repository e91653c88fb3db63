"""GTD and UTD far-field approximations and the diffraction coefficient."""

from __future__ import annotations

import enum
import math

import numpy as np

from .core import (
    PolarPoint,
    RegimeBoundary,
    SingularDirection,
    WedgeProblem,
    DomainError,
    PoleProximity,
    go_discontinuities,
    go_field,
    spectral_s,
)
from .sommerfeld import phi_f

__all__ = [
    "UtdRegime",
    "utd_regime",
    "diffraction_coefficient",
    "phi_gtd",
    "phi_utd",
]

_C = np.exp(0.25j * np.pi) / math.sqrt(2 * math.pi)


class UtdRegime(str, enum.Enum):
    TWO_REFLECTIONS = "TwoReflections"
    ONE_REFLECTION = "OneReflection"


def utd_regime(prob: WedgeProblem, tol: float = 1e-9) -> UtdRegime:
    gap = prob.theta_i - (math.pi - prob.theta_w)
    if abs(gap) < tol:
        raise RegimeBoundary("theta_i = pi - theta_w separates the two UTD regimes")
    return UtdRegime.TWO_REFLECTIONS if gap < 0 else UtdRegime.ONE_REFLECTION


def diffraction_coefficient(theta, theta_i, prob: WedgeProblem) -> complex:
    """D(theta, theta_i) = e^{i pi/4}/sqrt(2 pi) [s(theta - pi) - s(theta + pi)]."""
    p = prob.with_(theta_i=theta_i)
    try:
        val = _C * (spectral_s(theta - math.pi, p) - spectral_s(theta + math.pi, p))
    except PoleProximity:
        raise SingularDirection(f"D is singular at theta={theta}") from None
    return complex(val)


def _cyl(kr):
    return np.exp(1j * kr + 0.25j * np.pi) / np.sqrt(2 * np.pi * kr)


def phi_gtd(pt: PolarPoint, prob: WedgeProblem, guard: float = 1e-6) -> complex:
    """GO plus the cylindrical wave from the edge."""
    th = float(pt.theta)
    if any(abs(th - d) <= guard for d in go_discontinuities(prob)):
        raise SingularDirection(f"GTD is singular at theta={th}")
    kr = prob.k * float(pt.r)
    go = go_field(pt, prob)
    ds = spectral_s(th - math.pi, prob) - spectral_s(th + math.pi, prob)
    return complex(go + _cyl(kr) * ds)


def _utd_raw(r: float, th: float, prob: WedgeProblem) -> complex:
    k, tw, ti, sg = prob.k, prob.theta_w, prob.theta_i, prob.sign
    kr = k * r
    ds = spectral_s(th - math.pi, prob, 0.0) - spectral_s(th + math.pi, prob, 0.0)
    l1 = th + ti - 2 * tw
    if utd_regime(prob) is UtdRegime.TWO_REFLECTIONS:
        l2 = th + ti + 2 * tw
        field = (np.exp(-1j * kr * math.cos(th - ti))
                 + sg * phi_f(r, l1, k) + sg * phi_f(r, l2, k))
        corr = ds + sg * 0.5 / math.cos(l1 / 2) + sg * 0.5 / math.cos(l2 / 2)
    else:
        l0 = th - ti
        field = phi_f(r, l0, k) + sg * phi_f(r, l1, k)
        corr = ds + 0.5 / math.cos(l0 / 2) + sg * 0.5 / math.cos(l1 / 2)
    return complex(field + _cyl(kr) * corr)


def phi_utd(pt: PolarPoint, prob: WedgeProblem, h: float = 1e-3) -> complex:
    """Uniform approximation; finite across the shadow boundaries.

    Within h of a shadow boundary the secant and pole terms cancel
    catastrophically, so the value there is taken from the cubic through
    the four points at offsets +-h, +-2h.
    """
    if prob.theta_w <= math.pi / 2:
        raise DomainError("the UTD formulas here assume theta_w > pi/2")
    utd_regime(prob)
    r, th = float(pt.r), float(pt.theta)
    if r <= 0:
        raise DomainError("UTD needs r > 0")
    near = [d for d in go_discontinuities(prob) if abs(th - d) < h]
    if not near:
        return _utd_raw(r, th, prob)
    d = near[0]
    xs = np.array([-2 * h, -h, h, 2 * h])
    ys = np.array([_utd_raw(r, d + x, prob) for x in xs])
    t = th - d
    out = 0j
    for i, xi in enumerate(xs):
        li = np.prod([(t - xj) / (xi - xj) for j, xj in enumerate(xs) if j != i])
        out += ys[i] * li
    return complex(out)
