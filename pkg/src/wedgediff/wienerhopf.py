"""Wiener-Hopf mapping, kernel factorisations, spectral recovery and phase portraits."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import BranchCut, DomainError, PoleProximity, WedgeProblem

__all__ = [
    "ImageGrid",
    "arccos_principal",
    "eta_of_alpha",
    "alpha_of_eta",
    "z_of_alpha",
    "f_kernels",
    "f1_factors",
    "f3_factors",
    "wh_transforms",
    "wh_spectral",
    "v_go_top",
    "phase_portrait",
    "hsv_to_rgb",
    "write_ppm",
    "read_ppm",
]


def arccos_principal(w):
    """arccos(w) = -i log(w + i sqrt(1 - w^2)) with principal log and sqrt."""
    w = np.asarray(w, dtype=complex)
    out = -1j * np.log(w + 1j * np.sqrt(1 - w * w))
    return out[()] if out.ndim == 0 else out


def _check_cut(alpha, cut_left=True, cut_right=False, tol=1e-14):
    a = np.asarray(alpha, dtype=complex)
    on = np.zeros(a.shape, dtype=bool)
    if cut_left:
        on |= (a.real <= -1) & (np.abs(a.imag) < tol)
    if cut_right:
        on |= (a.real >= 1) & (np.abs(a.imag) < tol)
    if np.any(on):
        raise BranchCut("argument on a branch cut")


def eta_of_alpha(alpha, prob: WedgeProblem):
    """eta(alpha) = cos((theta_w/pi) arccos alpha)."""
    _check_cut(alpha)
    return np.cos(prob.theta_w / math.pi * arccos_principal(alpha))


def alpha_of_eta(eta, prob: WedgeProblem):
    """Inverse mapping alpha(eta) = cos((pi/theta_w) arccos eta)."""
    return np.cos(math.pi / prob.theta_w * arccos_principal(eta))


def z_of_alpha(alpha, prob: WedgeProblem):
    return prob.theta_w / math.pi * arccos_principal(alpha)


def f_kernels(eta, prob: WedgeProblem):
    eta = np.asarray(eta, dtype=complex)
    f1 = np.sqrt(1 - eta * eta)
    c, s = math.cos(prob.theta_w), math.sin(prob.theta_w)
    return f1, eta * c + f1 * s, eta * s - f1 * c


def f1_factors(alpha, prob: WedgeProblem):
    """Minus/plus factors of f1(eta(alpha)); f1_plus is regular at alpha = 1.

    f1_minus carries the cut [1, inf) and f1_plus the cut (-inf, -1]; on
    [1, inf) f1_minus takes its principal value and the product stays exact.
    """
    _check_cut(alpha)
    alpha = np.asarray(alpha, dtype=complex)
    fm = np.sqrt((1 - alpha) / 2)
    c = prob.theta_w / math.pi
    w = arccos_principal(alpha)
    with np.errstate(divide="ignore", invalid="ignore"):
        fp = np.sin(c * w) / fm
    # Removable point: sin(c w)/sqrt((1-alpha)/2) -> 2c as alpha -> 1.
    fp = np.where(np.abs(fm) < 1e-300, 2 * c, fp)
    return fm, fp


def f3_factors(alpha, prob: WedgeProblem):
    """f3_plus(alpha) = f1_minus(-alpha), f3_minus(alpha) = f1_plus(-alpha)."""
    fm, fp = f1_factors(-np.asarray(alpha, dtype=complex), prob)
    return fm, fp


def wh_transforms(z, prob: WedgeProblem):
    """Closed forms of V(cos z, 0) and sin(z) U(cos z, 0)."""
    z = np.asarray(z, dtype=complex)
    d, ti, k = prob.delta, prob.theta_i, prob.k
    den = 1j * k * (np.cos(2 * d * z) - math.cos(2 * d * ti))
    if np.any(np.abs(den) < 1e-13 * k):
        raise PoleProximity("W-H transforms evaluated at a pole")
    if prob.dirichlet:
        v = 2 * d * math.sin(2 * d * ti) / den
        su = -4 * d * math.cos(d * ti) * np.sin(d * z) / den
    else:
        v = 4 * d * math.sin(d * ti) * np.cos(d * z) / den
        su = -2 * d * np.sin(2 * d * z) / den
    return v, su


def wh_spectral(z, prob: WedgeProblem):
    """Spectral function recovered from the W-H solution, (ik/2)[sin z U - V]."""
    v, su = wh_transforms(z, prob)
    out = 0.5j * prob.k * (su - v)
    return out[()] if np.ndim(out) == 0 else out


def v_go_top(alpha, prob: WedgeProblem):
    """GO part of the upper-face transform V, evaluated at eta(-alpha)."""
    zz = z_of_alpha(-np.asarray(alpha, dtype=complex), prob)
    tw, ti, k = prob.theta_w, prob.theta_i, prob.k
    return 2j * math.sin(tw - ti) / (k * np.cos(zz) - k * math.cos(tw - ti))


@dataclass(frozen=True)
class ImageGrid:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    width: int = 256
    height: int = 256
    pixels: np.ndarray | None = None

    def __post_init__(self):
        if self.width < 16 or self.height < 16:
            raise DomainError("image must be at least 16x16")
        if not (self.re_max > self.re_min and self.im_max > self.im_min):
            raise DomainError("degenerate window")

    def centers(self):
        dx = (self.re_max - self.re_min) / self.width
        dy = (self.im_max - self.im_min) / self.height
        x = self.re_min + (np.arange(self.width) + 0.5) * dx
        y = self.im_max - (np.arange(self.height) + 0.5) * dy
        return x[None, :] + 1j * y[:, None]


def hsv_to_rgb(h, s, v):
    """Standard six-sector HSV to RGB on arrays in [0, 1]."""
    h = np.mod(h, 1.0) * 6.0
    i = np.floor(h).astype(int) % 6
    f = h - np.floor(h)
    p, q, t = v * (1 - s), v * (1 - s * f), v * (1 - s * (1 - f))
    r = np.choose(i, [v, q, p, p, t, v])
    g = np.choose(i, [t, v, v, q, p, p])
    b = np.choose(i, [p, p, t, v, v, q])
    return np.stack([r, g, b], axis=-1)


def phase_portrait(f, grid: ImageGrid) -> ImageGrid:
    """Colour each pixel by arg f: hue = frac(arg/2pi), red at 0, cyan at pi."""
    zz = grid.centers()
    with np.errstate(all="ignore"):
        try:
            w = np.asarray(f(zz), dtype=complex)
        except Exception:
            w = np.array([[_safe(f, z) for z in row] for row in zz])
    w = np.broadcast_to(w, zz.shape)
    bad = ~np.isfinite(w)
    hue = np.mod(np.angle(np.where(bad, 1.0, w)) / (2 * np.pi), 1.0)
    rgb = hsv_to_rgb(hue, np.ones_like(hue), np.ones_like(hue))
    rgb[bad] = 0.0
    pix = np.clip(np.rint(rgb * 255), 0, 255).astype(np.uint8)
    return replace(grid, pixels=pix)


def _safe(f, z):
    try:
        return complex(f(z))
    except Exception:
        return complex("nan")


def write_ppm(grid: ImageGrid, path) -> None:
    if grid.pixels is None:
        raise DomainError("grid has no pixels")
    h, w, _ = grid.pixels.shape
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(grid.pixels, dtype=np.uint8).tobytes())


def read_ppm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P6":
        raise DomainError("not a binary PPM")
    w, h = map(int, parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w, 3)
