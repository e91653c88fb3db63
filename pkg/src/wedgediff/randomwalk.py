"""Feynman-Kac Monte Carlo for the wedge with complex-coefficient SDEs.

The radial coordinate follows d xi1 = xi1 (ik xi1 + 1/2) dt + xi1 dW1 and the
angular one d xi2 = dW2; paths stop when xi2 leaves (-theta_w, theta_w).
Each path owns a random stream derived from (seed, path index), so results
do not depend on batching.  Paths are advanced together, one Euler step at a
time, with noise drawn per path in fixed-size blocks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import DomainError, PolarPoint, WedgeError, WedgeProblem

__all__ = [
    "Estimator",
    "McConfig",
    "McEstimate",
    "PathRecord",
    "PathCapped",
    "NotApplicable",
    "crossing_lines",
    "classify_crossings",
    "simulate_paths",
    "simulate_path",
    "estimate_continuous",
    "estimate_crossing",
    "hankel_boundary",
    "exact_radial",
]

_BLOCK = 512


class PathCapped(WedgeError):
    """A path reached t_max before leaving the wedge."""


class NotApplicable(WedgeError):
    """Estimator preconditions are not met for this configuration."""


class Estimator(str, enum.Enum):
    CONTINUOUS_A = "ContinuousA"
    CONTINUOUS_B = "ContinuousB"
    CROSSING = "Crossing"


@dataclass(frozen=True)
class McConfig:
    dt: float = 0.01
    n_paths: int = 2000
    seed: int = 0
    t_max: float = 200.0
    estimator: Estimator = Estimator.CONTINUOUS_A

    def __post_init__(self):
        if self.dt <= 0 or self.n_paths < 1 or self.t_max <= 0:
            raise DomainError("need dt > 0, n_paths >= 1 and t_max > 0")
        object.__setattr__(self, "estimator", Estimator(self.estimator))


@dataclass(frozen=True)
class McEstimate:
    mean: complex
    std_error: float
    n_used: int
    n_capped: int
    samples: np.ndarray = field(default=None, repr=False, compare=False)


@dataclass
class PathRecord:
    tau: float
    xi1: complex
    w1: float
    integral: complex
    face: int
    capped: bool
    crossings: list
    cross_sum: complex


def crossing_lines(prob: WedgeProblem):
    """(theta_1, m=2) and (theta_2, m=1) where the GO field jumps."""
    th1 = 2 * prob.theta_w - prob.theta_i - math.pi
    th2 = math.pi - 2 * prob.theta_w - prob.theta_i
    return [(th1, 2), (th2, 1)]


def classify_crossings(times, values, lines, from_above: int = 1):
    """Crossings (t, m, delta) of a piecewise-linear path with the given lines.

    A crossing from above gets delta = from_above, one from below -from_above.
    """
    out = []
    for j in range(len(values) - 1):
        x0, x1 = values[j], values[j + 1]
        hits = []
        for th, m in lines:
            a, b = x0 - th, x1 - th
            if (a > 0) != (b > 0):
                frac = a / (a - b)
                d = from_above if a > 0 else -from_above
                hits.append((times[j] + frac * (times[j + 1] - times[j]), m, d))
        out.extend(sorted(hits))
    return out


def _path_rng(seed: int, i: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed) & (2**64 - 1), int(i)])))


def simulate_paths(start: PolarPoint, prob: WedgeProblem, cfg: McConfig, indices=None,
                   from_above: int = 1, record_crossings: bool = False):
    """Run the Euler-Maruyama scheme for a batch of paths; returns a dict of arrays."""
    r0, th0 = float(start.r), float(start.theta)
    tw, k, dt = prob.theta_w, prob.k, cfg.dt
    if not abs(th0) < tw:
        raise DomainError("start angle must lie strictly inside the wedge exterior")
    if r0 <= 0:
        raise DomainError("start radius must be positive")
    idx = np.arange(cfg.n_paths) if indices is None else np.asarray(indices)
    n = idx.size
    rngs = [_path_rng(cfg.seed, i) for i in idx]
    n_steps_max = int(math.ceil(cfg.t_max / dt))
    lines = crossing_lines(prob)
    lines = [(th, m) for th, m in lines if -tw < th < tw]
    sq = math.sqrt(dt)
    half_ik = 0.5j * k

    xi1 = np.full(n, r0, dtype=complex)
    xi2 = np.full(n, th0)
    w1 = np.zeros(n)
    integ = np.zeros(n, dtype=complex)
    cross = np.zeros(n, dtype=complex)
    out_tau = np.full(n, np.nan)
    out_xi1 = np.full(n, np.nan + 0j)
    out_w1 = np.full(n, np.nan)
    out_int = np.full(n, np.nan + 0j)
    out_face = np.zeros(n, dtype=int)
    logs = [[] for _ in range(n)] if record_crossings else None
    active = np.arange(n)
    step = 0
    while active.size and step < n_steps_max:
        nb = min(_BLOCK, n_steps_max - step)
        noise = np.stack([rngs[i].standard_normal((2, _BLOCK))[:, :nb] for i in active], axis=0) * sq
        a_xi1, a_xi2, a_w1 = xi1[active], xi2[active], w1[active]
        a_int, a_cross = integ[active], cross[active]
        alive = np.ones(active.size, dtype=bool)
        for j in range(nb):
            live = np.nonzero(alive)[0]
            if live.size == 0:
                break
            t0 = (step + j) * dt
            x, x2 = a_xi1[live], a_xi2[live]
            d1, d2 = noise[live, 0, j], noise[live, 1, j]
            xn = x + x * (1j * k * x + 0.5) * dt + x * d1
            x2n = x2 + d2
            wn = a_w1[live] + d1
            intn = a_int[live] + 0.5 * (x + xn) * dt
            for th, m in lines:
                a, b = x2 - th, x2n - th
                hit = (a > 0) != (b > 0)
                if np.any(hit):
                    h = np.nonzero(hit)[0]
                    frac = a[h] / (a[h] - b[h])
                    sgn = np.where(a[h] > 0, from_above, -from_above)
                    i_nu = a_int[live[h]] + frac * (intn[h] - a_int[live[h]])
                    a_cross[live[h]] += (-1) ** m * sgn * np.exp(half_ik * i_nu)
                    if record_crossings:
                        for hh, ff, ss in zip(h, frac, sgn):
                            logs[active[live[hh]]].append((t0 + ff * dt, m, int(ss)))
            a_xi1[live], a_xi2[live], a_w1[live], a_int[live] = xn, x2n, wn, intn
            ex = np.abs(x2n) >= tw
            if np.any(ex):
                e = np.nonzero(ex)[0]
                bound = np.sign(x2n[e]) * tw
                frac = (bound - x2[e]) / (x2n[e] - x2[e])
                g = active[live[e]]
                out_tau[g] = t0 + frac * dt
                out_xi1[g] = x[e] + frac * (xn[e] - x[e])
                out_w1[g] = wn[e] - (1 - frac) * d1[e]
                i_old = a_int[live[e]] - 0.5 * (x[e] + xn[e]) * dt
                out_int[g] = i_old + frac * (intn[e] - i_old)
                out_face[g] = np.sign(bound).astype(int)
                alive[live[e]] = False
        xi1[active], xi2[active], w1[active] = a_xi1, a_xi2, a_w1
        integ[active], cross[active] = a_int, a_cross
        active = active[alive]
        step += nb
    capped = np.isnan(out_tau)
    return dict(tau=out_tau, xi1=out_xi1, w1=out_w1, integral=out_int, face=out_face,
                capped=capped, cross_sum=cross, crossings=logs, index=idx)


def simulate_path(start: PolarPoint, prob: WedgeProblem, cfg: McConfig, path_index: int,
                  from_above: int = 1) -> PathRecord:
    res = simulate_paths(start, prob, cfg, [path_index], from_above, record_crossings=True)
    rec = PathRecord(float(res["tau"][0]), complex(res["xi1"][0]), float(res["w1"][0]),
                     complex(res["integral"][0]), int(res["face"][0]), bool(res["capped"][0]),
                     res["crossings"][0], complex(res["cross_sum"][0]))
    if rec.capped:
        raise PathCapped(f"path {path_index} did not exit before t_max")
    return rec


def _summarise(values: np.ndarray, capped: np.ndarray) -> McEstimate:
    used = values[~capped]
    n = used.size
    if n == 0:
        raise PathCapped("every path was capped")
    mean = complex(np.sum(used) / n)
    if n > 1:
        var = np.var(used.real, ddof=1) + np.var(used.imag, ddof=1)
        se = math.sqrt(var / n)
    else:
        se = 0.0
    return McEstimate(mean, se, int(n), int(capped.sum()), values)


def estimate_continuous(start: PolarPoint, prob: WedgeProblem, cfg: McConfig, f, paths=None) -> McEstimate:
    """Estimator for boundary data f(r, face) with r complex; face is +1 (top) or -1."""
    res = paths if paths is not None else simulate_paths(start, prob, cfg)
    cap = res["capped"]
    vals = np.zeros(cap.size, dtype=complex)
    ok = ~cap
    fv = np.asarray(f(res["xi1"][ok], res["face"][ok]), dtype=complex)
    if cfg.estimator is Estimator.CONTINUOUS_B:
        vals[ok] = fv * np.sqrt(res["xi1"][ok]) * np.exp(-0.5 * res["w1"][ok]) / math.sqrt(start.r)
    else:
        vals[ok] = fv * np.exp(0.5j * prob.k * res["integral"][ok])
    return _summarise(vals, cap)


def estimate_crossing(start: PolarPoint, prob: WedgeProblem, cfg: McConfig, from_above: int = 1,
                      paths=None) -> McEstimate:
    """Estimate u with Phi_diff = u e^{ikr} from the GO jumps crossed before exit."""
    if not prob.dirichlet:
        raise NotApplicable("the crossing estimator is derived for Dirichlet walls")
    tw = prob.theta_w
    if any(not (-tw < th < tw) for th, _ in crossing_lines(prob)):
        raise NotApplicable("both GO discontinuities must lie inside the wedge exterior")
    res = paths if paths is not None else simulate_paths(start, prob, cfg, from_above=from_above)
    return _summarise(np.asarray(res["cross_sum"]), res["capped"])


def hankel_boundary(k: float):
    """Boundary data e^{-ikr} H_0^(1)(kr) for the radial test solution."""
    from .specfun import hankel1_0_complex

    return lambda r, face: np.exp(-1j * k * r) * hankel1_0_complex(r, k)


def exact_radial(r, w, k, s_grid=None):
    """Closed-form xi1 along a given Brownian path w(s): e^{w}/(1/r - ik int e^{w})."""
    w = np.asarray(w, dtype=float)
    ds = np.diff(s_grid)
    ew = np.exp(w)
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (ew[1:] + ew[:-1]) * ds)])
    return ew / (1.0 / r - 1j * k * cum)
