"""Problem definition, the spectral function s(z) and geometrical-optics bookkeeping."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BC",
    "WedgeError",
    "DomainError",
    "PoleProximity",
    "OnShadowBoundary",
    "QuadratureNotConverged",
    "SingularDirection",
    "RegimeBoundary",
    "BranchCut",
    "WedgeProblem",
    "PolarPoint",
    "GoTerm",
    "GoField",
    "spectral_s",
    "spectral_poles",
    "go_poles_in_window",
    "go_field",
    "go_discontinuities",
    "go_field_model",
]


class WedgeError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(WedgeError, ValueError):
    """Argument outside the supported domain."""


class PoleProximity(WedgeError):
    """Evaluation too close to a pole of s."""


class OnShadowBoundary(WedgeError):
    """Observation angle sits on a GO shadow boundary."""


class QuadratureNotConverged(WedgeError):
    """A quadrature failed to reach its tolerance."""


class SingularDirection(WedgeError):
    """A far-field formula is singular in the requested direction."""


class RegimeBoundary(WedgeError):
    """Incidence angle on the boundary between two UTD regimes."""


class BranchCut(WedgeError):
    """Argument lies on (or too close to) a branch cut."""


class BC(str, enum.Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"

    @classmethod
    def parse(cls, value) -> "BC":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown boundary condition {value!r}") from None


@dataclass(frozen=True)
class WedgeProblem:
    """Exterior wedge |theta| < theta_w lit by a plane wave from direction theta_i."""

    theta_w: float
    theta_i: float
    k: float = 1.0
    bc: BC = BC.DIRICHLET

    def __post_init__(self):
        object.__setattr__(self, "bc", BC.parse(self.bc))
        tw, ti, k = float(self.theta_w), float(self.theta_i), float(self.k)
        if not (0.0 < tw <= math.pi + 1e-15):
            raise DomainError(f"theta_w must lie in (0, pi], got {tw}")
        if not (0.0 <= ti <= tw + 1e-15):
            # Negative incidence is rejected rather than mirrored.
            raise DomainError(f"theta_i must lie in [0, theta_w], got {ti}")
        if not (k > 0.0 and math.isfinite(k)):
            raise DomainError(f"k must be positive, got {k}")
        object.__setattr__(self, "theta_w", tw)
        object.__setattr__(self, "theta_i", ti)
        object.__setattr__(self, "k", k)

    @property
    def delta(self) -> float:
        return math.pi / (2.0 * self.theta_w)

    @property
    def dirichlet(self) -> bool:
        return self.bc is BC.DIRICHLET

    @property
    def sign(self) -> int:
        """Upper/lower sign of the reflected terms: -1 Dirichlet, +1 Neumann."""
        return -1 if self.dirichlet else 1

    def with_(self, **kw) -> "WedgeProblem":
        d = dict(theta_w=self.theta_w, theta_i=self.theta_i, k=self.k, bc=self.bc)
        d.update(kw)
        return WedgeProblem(**d)


@dataclass(frozen=True)
class PolarPoint:
    r: float
    theta: float

    def check(self, prob: WedgeProblem) -> None:
        if self.r < 0:
            raise DomainError("r must be non-negative")
        if abs(self.theta) > prob.theta_w + 1e-12:
            raise DomainError(f"|theta| = {abs(self.theta)} exceeds theta_w")


@dataclass(frozen=True)
class GoTerm:
    residue: int
    pole_angle: float

    def value(self, r, theta, k):
        return self.residue * np.exp(-1j * k * r * np.cos(self.pole_angle - theta))


@dataclass(frozen=True)
class GoField:
    terms: tuple = field(default_factory=tuple)
    discontinuity_angles: tuple = field(default_factory=tuple)


def spectral_s(z, prob: WedgeProblem, floor: float = 1e-13):
    """The spectral function s(z); accepts scalars or arrays."""
    d = prob.delta
    z = np.asarray(z, dtype=complex)
    sdi = math.sin(d * prob.theta_i)
    den = np.sin(d * z) - sdi
    if np.any(np.abs(den) < floor):
        raise PoleProximity("s(z) evaluated at a pole")
    if prob.dirichlet:
        out = d * math.cos(d * prob.theta_i) / den
    else:
        out = d * np.cos(d * z) / den
    return out[()] if out.ndim == 0 else out


def spectral_poles(prob: WedgeProblem, lo: float, hi: float):
    """Real poles of s in [lo, hi] as (angle, residue, family) tuples."""
    tw, ti = prob.theta_w, prob.theta_i
    per = 4.0 * tw
    refl_res = -1 if prob.dirichlet else 1
    out = []
    for base, res, fam in ((ti, 1, "incident"), (2 * tw - ti, refl_res, "reflected")):
        n0 = math.floor((lo - base) / per) - 1
        n1 = math.ceil((hi - base) / per) + 1
        for n in range(n0, n1 + 1):
            p = base + per * n
            if lo <= p <= hi:
                out.append((p, res, fam))
    out.sort()
    return out


def go_poles_in_window(theta: float, prob: WedgeProblem, tol: float = 1e-10):
    """GO terms (poles p with p - theta in (-pi, pi)) at angle theta."""
    theta = float(theta)
    if abs(theta) > prob.theta_w + 1e-12:
        raise DomainError("observation angle outside the wedge exterior")
    cand = spectral_poles(prob, theta - math.pi - 1.0, theta + math.pi + 1.0)
    terms = []
    for p, res, _ in cand:
        x = p - theta
        if abs(abs(x) - math.pi) < tol:
            # A pole leaving at +pi is harmless when an identical wave enters at -pi.
            partner = p - 2 * math.pi * math.copysign(1.0, x)
            twin = any(abs(q - partner) < tol and rq == res for q, rq, _ in cand)
            if not twin:
                raise OnShadowBoundary(f"theta={theta} is on the shadow boundary of pole {p}")
            if x > 0:
                terms.append(GoTerm(res, p))
            continue
        if -math.pi < x < math.pi:
            terms.append(GoTerm(res, p))
    return terms


def go_field(pt: PolarPoint, prob: WedgeProblem, tol: float = 1e-10) -> complex:
    terms = go_poles_in_window(pt.theta, prob, tol)
    return complex(sum(t.value(pt.r, pt.theta, prob.k) for t in terms))


def go_discontinuities(prob: WedgeProblem, edge_tol: float = 1e-12):
    """Sorted angles inside (-theta_w, theta_w) where the GO field jumps."""
    tw = prob.theta_w
    cand = spectral_poles(prob, -tw - math.pi - 1.0, tw + math.pi + 1.0)
    jumps: dict = {}
    for p, res, _ in cand:
        for ang, sgn in ((p - math.pi, 1), (p + math.pi, -1)):
            if -tw + edge_tol < ang < tw - edge_tol:
                key = round(ang, 10)
                # Poles 2 pi apart describe the same plane wave.
                wave = (round(math.cos(p), 9) + 0.0, round(math.sin(p), 9) + 0.0)
                jumps.setdefault(key, {}).setdefault(wave, 0)
                jumps[key][wave] += sgn * res
    out = [a for a, waves in jumps.items() if any(v != 0 for v in waves.values())]
    return sorted(out)


def go_field_model(prob: WedgeProblem) -> GoField:
    tw = prob.theta_w
    poles = spectral_poles(prob, -tw - math.pi, tw + math.pi)
    return GoField(tuple(GoTerm(r, p) for p, r, _ in poles), tuple(go_discontinuities(prob)))
