"""Special functions: Bessel/Hankel, Fresnel, the Gudermann-type Gamma(tau), Euler gamma.

Real-order Bessel functions and the Fresnel integrals are thin wrappers
over :mod:`scipy.special` with the domain checks and underflow policy the
rest of the package relies on.  The complex-argument H_0^(1) used by the
random walk is evaluated here from its series and asymptotic expansion.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as sc

from .core import BranchCut, DomainError

__all__ = [
    "UNDERFLOW",
    "bessel_j",
    "hankel1",
    "hankel1_0_complex",
    "bessel_j_complex_order",
    "fresnel_f",
    "gudermann_gamma",
    "gamma_fn",
]

UNDERFLOW = 1e-290
EULER_GAMMA = 0.57721566490153286061


def _check_order_arg(nu, x):
    if np.any(np.asarray(nu) < 0):
        raise DomainError("negative order")
    if np.any(np.asarray(x) <= 0):
        raise DomainError("non-positive argument")


def bessel_j(nu, x):
    """J_nu(x) for nu >= 0, x > 0; values below 1e-290 are flushed to zero."""
    _check_order_arg(nu, x)
    out = sc.jv(nu, x)
    out = np.where(np.abs(out) < UNDERFLOW, 0.0, out)
    return out[()] if np.ndim(out) == 0 else out


def hankel1(nu, x):
    """H^(1)_nu(x) for real nu >= 0 and x > 0."""
    _check_order_arg(nu, x)
    out = sc.hankel1(nu, x)
    return out[()] if np.ndim(out) == 0 else out


def _h0_series(w):
    q = -(w * w) / 4.0
    term = np.ones_like(w)
    j0 = term.copy()
    ysum = np.zeros_like(w)
    harm = 0.0
    for m in range(1, 80):
        term = term * q / (m * m)
        harm += 1.0 / m
        j0 = j0 + term
        ysum = ysum - harm * term
        if np.all(np.abs(term) * (1 + harm) < 1e-18 * np.maximum(1.0, np.abs(j0))):
            break
    y0 = (2 / np.pi) * ((np.log(w / 2) + EULER_GAMMA) * j0 + ysum)
    return j0 + 1j * y0


def _h0_asymptotic(w, max_terms=20):
    acc = np.ones_like(w)
    a = np.ones_like(w)
    last = np.full(w.shape, np.inf)
    for j in range(1, max_terms + 1):
        # a_j(0) (i/w)^j with a_j = prod (-(2l-1)^2) / (j! 8^j)
        nxt = a * (-(2 * j - 1) ** 2) / (8.0 * j) * (1j / w)
        grow = np.abs(nxt) >= last
        if np.all(grow):
            break
        nxt = np.where(grow, 0.0, nxt)
        last = np.where(grow, 0.0, np.abs(nxt))
        a = nxt
        acc = acc + a
    return np.sqrt(2 / (np.pi * w)) * np.exp(1j * (w - np.pi / 4)) * acc


def _h0_large(w):
    """Asymptotic branch; below arg w = -pi/2 use H1(-u) = 2 H1(u) + H2(u), u = -w."""
    out = np.empty_like(w)
    left = np.angle(w) < -0.5 * np.pi
    if np.any(~left):
        out[~left] = _h0_asymptotic(w[~left])
    if np.any(left):
        u = -w[left]
        h2 = np.conj(_h0_asymptotic(np.conj(u)))
        out[left] = 2 * _h0_asymptotic(u) + h2
    return out


def hankel1_0_complex(z, k=1.0, switch=12.0):
    """H^(1)_0(kz) for complex kz off the negative real axis."""
    w = np.asarray(k * np.asarray(z, dtype=complex), dtype=complex)
    if np.any(w == 0):
        raise DomainError("H_0 is singular at zero")
    if np.any((w.real < 0) & (np.abs(w.imag) < 1e-12)):
        raise BranchCut("argument on the negative real axis")
    small = np.abs(w) < switch
    out = np.empty_like(w)
    if np.any(small):
        out[small] = _h0_series(w[small])
    if np.any(~small):
        out[~small] = _h0_large(w[~small])
    return out[()] if out.ndim == 0 else out


def bessel_j_complex_order(nu, x, tol=1e-17, max_terms=400):
    """J_nu(x) for complex order and moderate real x > 0 by the ascending series."""
    nu = np.asarray(nu, dtype=complex)
    x = float(x)
    if x <= 0:
        raise DomainError("x must be positive")
    h = x / 2.0
    term = np.exp(nu * math.log(h)) * sc.rgamma(nu + 1)
    acc = term.copy()
    for m in range(1, max_terms):
        term = term * (-h * h) / (m * (m + nu))
        acc = acc + term
        if np.all(np.abs(term) <= tol * np.maximum(np.abs(acc), 1e-300)):
            break
    return acc[()] if acc.ndim == 0 else acc


def fresnel_f(v):
    """F(v) = int_0^v exp(i u^2) du."""
    v = np.asarray(v, dtype=float)
    s = math.sqrt(2.0 / math.pi)
    ss, cc = sc.fresnel(v * s)
    out = math.sqrt(math.pi / 2.0) * (cc + 1j * ss)
    return out[()] if out.ndim == 0 else out


def gudermann_gamma(tau):
    """Gamma(tau) = ln|sec tau - tan tau|, so that sinh Gamma = -tan tau."""
    tau = np.asarray(tau, dtype=float)
    if np.any(np.abs(tau) >= math.pi / 2):
        raise DomainError("|tau| must be below pi/2")
    out = -np.arcsinh(np.tan(tau))
    return out[()] if out.ndim == 0 else out


def gamma_fn(x):
    """Euler's Gamma for 0 < x <= 170."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0) or np.any(x > 170):
        raise DomainError("gamma_fn supports 0 < x <= 170")
    out = sc.gamma(x)
    return out[()] if out.ndim == 0 else out
