import math

import numpy as np
import pytest

from wedgediff.core import (
    BC,
    DomainError,
    PolarPoint,
    RegimeBoundary,
    SingularDirection,
    WedgeProblem,
    go_discontinuities,
    go_field,
)
from wedgediff.embedding import embed_diffraction_coefficient
from wedgediff.gtd import UtdRegime, diffraction_coefficient, phi_gtd, phi_utd, utd_regime
from wedgediff.series import phi_series
from wedgediff.sommerfeld import phi_total

from conftest import TW, wedge


def test_regimes():
    assert utd_regime(wedge(0.0)) is UtdRegime.TWO_REFLECTIONS
    assert utd_regime(wedge(1.0)) is UtdRegime.ONE_REFLECTION
    with pytest.raises(RegimeBoundary):
        utd_regime(wedge(math.pi - TW))
    with pytest.raises(RegimeBoundary):
        phi_utd(PolarPoint(5.0, 0.1), wedge(math.pi - TW))


def test_reciprocity():
    p = wedge(0.0)
    assert abs(diffraction_coefficient(0.3, 0.1, p) - diffraction_coefficient(0.1, 0.3, p)) < 1e-12


def test_half_space_coefficient_vanishes():
    p = WedgeProblem(math.pi / 2, 0.3, 1.0, BC.DIRICHLET)
    for th in (-1.2, -0.4, 0.2, 1.1):
        assert abs(diffraction_coefficient(th, 0.3, p)) < 1e-12
    pt = PolarPoint(4.0, 0.2)
    assert abs(phi_gtd(pt, p) - go_field(pt, p)) < 1e-12


def test_matches_embedding():
    p = wedge(0.5)
    assert abs(diffraction_coefficient(0.2, 0.5, p) - embed_diffraction_coefficient(0.2, 0.5, p)) < 1e-10


def test_singular_direction():
    p = wedge(0.0)
    d = 2 * TW - math.pi
    with pytest.raises(SingularDirection):
        phi_gtd(PolarPoint(5.0, d), p)
    with pytest.raises(SingularDirection):
        diffraction_coefficient(d, 0.0, p)


def test_gtd_error_decreases():
    p = wedge(0.0)
    err = [abs(phi_gtd(PolarPoint(kr, 0.0), p) - phi_total(PolarPoint(kr, 0.0), p).total) for kr in (5, 25)]
    assert err[1] < err[0]


def test_gtd_dirichlet_face():
    p = wedge(0.3)
    for face in (TW, -TW):
        assert abs(phi_gtd(PolarPoint(6.0, face), p)) < 1e-12


def test_utd_continuous_at_reflection_boundary():
    # One-sided limits of the unblended formula, by quartic extrapolation.
    p = wedge(0.0)
    b = 2 * TW - math.pi
    xs = 0.005 * np.arange(1, 6)

    def limit(sg):
        ys = [phi_utd(PolarPoint(5.0, b + sg * x), p, h=1e-6) for x in xs]
        return np.polyval(np.polyfit(xs, np.array(ys), 4), 0.0)

    assert abs(limit(1) - limit(-1)) < 1e-6
    lo = phi_utd(PolarPoint(5.0, b - 1e-5), p)
    hi = phi_utd(PolarPoint(5.0, b + 1e-5), p)
    assert abs(lo - hi) < 1e-3


def test_utd_finite_at_boundaries(bc):
    p = wedge(0.0, bc=bc)
    for d in go_discontinuities(p):
        assert np.isfinite(phi_utd(PolarPoint(5.0, d), p))


def test_utd_small_wedge_rejected():
    with pytest.raises(DomainError):
        phi_utd(PolarPoint(5.0, 0.1), WedgeProblem(math.pi / 2, 0.3, 1.0, BC.DIRICHLET))


def test_thin_wedge_against_series():
    tw = 35 * math.pi / 36
    p = WedgeProblem(tw, tw - math.pi / 2, 1.0, BC.DIRICHLET)
    kr = 10 * math.pi
    th = np.linspace(-tw, tw, 181)
    ref = phi_series(PolarPoint(kr, th), p)
    utd = np.array([phi_utd(PolarPoint(kr, float(t)), p) for t in th])
    assert np.max(np.abs(utd - ref)) < 2e-2


def test_utd_boundary_error_decreases():
    p = wedge(0.0)
    err = [abs(phi_utd(PolarPoint(kr, TW), p) - phi_series(PolarPoint(kr, TW), p)) for kr in (1, 5, 10, 25)]
    assert all(b < a for a, b in zip(err, err[1:]))


def test_utd_tends_to_gtd():
    p = wedge(0.0)
    th = 0.3
    scaled = [abs(phi_utd(PolarPoint(kr, th), p) - phi_gtd(PolarPoint(kr, th), p)) * kr**1.5
              for kr in (50, 100, 200, 400)]
    assert max(scaled) < 10 * min(scaled) + 1.0


def test_error_ordering_at_kr10():
    p = wedge(0.0)
    disc = go_discontinuities(p)
    th = [t for t in np.linspace(-TW, TW, 91)[1:-1] if min(abs(t - d) for d in disc) > 0.05]
    ex = phi_series(PolarPoint(10.0, np.asarray(th)), p)
    eg = max(abs(phi_gtd(PolarPoint(10.0, t), p) - e) for t, e in zip(th, ex))
    eu = max(abs(phi_utd(PolarPoint(10.0, t), p) - e) for t, e in zip(th, ex))
    assert eg > eu
