import cmath
import math

import numpy as np
import pytest

from wedgediff.core import BC, DomainError, OnShadowBoundary, PolarPoint, WedgeProblem, go_field
from wedgediff.gtd import diffraction_coefficient
from wedgediff.series import phi_series
from wedgediff.sommerfeld import (
    QuadratureSpec,
    Rule,
    phi_diff_sdc,
    phi_f,
    phi_gamma_plus_direct,
    phi_halfplane_fresnel,
    phi_total,
)

from conftest import TW, wedge


def test_half_space_diffracted_vanishes(bc):
    rng = np.random.default_rng(3)
    for _ in range(10):
        p = WedgeProblem(math.pi / 2, rng.uniform(0, 1.5), 1.0, bc)
        pt = PolarPoint(rng.uniform(0.1, 20), rng.uniform(-1.5, 1.5))
        assert abs(phi_diff_sdc(pt, p)) < 1e-12


def test_half_space_total_is_images():
    p = WedgeProblem(math.pi / 2, 0.0, 1.0, BC.DIRICHLET)
    res = phi_total(PolarPoint(3.0, math.pi / 4), p)
    c = math.cos(math.pi / 4)
    assert abs(res.total - (cmath.exp(-3j * c) - cmath.exp(3j * c))) < 1e-12
    assert res.total == res.go + res.diffracted


def test_half_plane_diffracted_matches_fresnel():
    p = WedgeProblem(math.pi, math.pi / 3, 1.0, BC.DIRICHLET)
    pt = PolarPoint(4.0, 0.0)
    ref = phi_halfplane_fresnel(pt, p) - go_field(pt, p)
    assert abs(phi_diff_sdc(pt, p) - ref) < 1e-9


def test_sdc_matches_frozen_series_values():
    # Frozen 30-digit values of the eigenfunction series (mpmath).
    cases = [
        (0.0, 5.0, 0.0, BC.DIRICHLET, 0.10753043650336927 + 1.0685375559975037j),
        (0.0, 5.0, 0.0, BC.NEUMANN, 0.32184306182066086 + 0.9335261050167988j),
        (math.pi / 2, 1.0, 0.3, BC.DIRICHLET, 0.8229791089222835 - 0.8791522640088835j),
        (math.pi / 2, 10.0, -1.2, BC.NEUMANN, -0.8803593380826971 + 0.23562271614926525j),
        (0.0, 10.0, 0.5, BC.DIRICHLET, -0.7594116550955223 - 0.454532310912305j),
    ]
    for ti, r, th, bc, ref in cases:
        assert abs(phi_total(PolarPoint(r, th), wedge(ti, bc=bc)).total - ref) < 1e-12


def test_tanh_sinh_rule_agrees():
    p = wedge(0.0)
    pt = PolarPoint(5.0, 0.4)
    a = phi_diff_sdc(pt, p)
    b = phi_diff_sdc(pt, p, QuadratureSpec(rule=Rule.TANH_SINH))
    assert abs(a - b) < 1e-10


def test_est_error_reported():
    val, err = phi_diff_sdc(PolarPoint(5.0, 0.4), wedge(0.0), return_error=True)
    assert 0 <= err < 1e-10


def test_shadow_boundary_raises():
    with pytest.raises(OnShadowBoundary):
        phi_diff_sdc(PolarPoint(1.0, 3 * math.pi / 4), wedge(0.0))


def test_near_boundary_refined():
    p = wedge(0.0)
    th = 3 * math.pi / 4 + 1e-6
    ref = complex(phi_series(PolarPoint(5.0, th), p))
    assert abs(phi_total(PolarPoint(5.0, th), p).total - ref) < 1e-8


def test_dirichlet_boundary():
    for kr in (1, 5, 10):
        for th in (TW, -TW):
            assert abs(phi_total(PolarPoint(kr, th), wedge(0.0)).total) < 1e-7


def test_neumann_boundary_derivative():
    p = wedge(0.0, bc=BC.NEUMANN)
    h = 1e-4
    for kr in (1, 5, 10):
        f = [phi_total(PolarPoint(kr, TW - j * h), p).total for j in range(3)]
        d = (3 * f[0] - 4 * f[1] + f[2]) / (2 * h)
        assert abs(d) < 1e-4 * kr


def test_gamma_plus_direct():
    p = wedge(0.0)
    pt = PolarPoint(1.0, 0.3)
    ref = phi_total(pt, p).total
    assert abs(phi_gamma_plus_direct(pt, p) - ref) < 1e-6
    assert abs(phi_gamma_plus_direct(pt, p) - (0.5751741743976567 - 1.244808081733191j)) < 1e-6
    h = WedgeProblem(math.pi / 2, 0.4, 1.0, BC.NEUMANN)
    pt = PolarPoint(2.0, 0.2)
    assert abs(phi_gamma_plus_direct(pt, h) - go_field(pt, h)) < 1e-6


def test_halfplane_fresnel_cases():
    for bc in (BC.DIRICHLET, BC.NEUMANN):
        p = WedgeProblem(math.pi, 0.0, 1.0, bc)
        for th in (-math.pi + 1e-3, 0.0, 1.0):
            pt = PolarPoint(10.0, th)
            assert abs(phi_halfplane_fresnel(pt, p) - phi_total(pt, p).total) < 1e-9
    p = WedgeProblem(math.pi, 0.5, 1.0, BC.DIRICHLET)
    assert abs(phi_halfplane_fresnel(PolarPoint(1e-12, 0.2), p)) < 1e-5
    with pytest.raises(DomainError):
        phi_halfplane_fresnel(PolarPoint(1.0, 0.0), wedge(0.0))


def test_phi_f_identities():
    assert phi_f(0.0, 0.0) == pytest.approx(0.5)
    lam, r = math.pi / 3, 2.0
    assert abs(phi_f(r, lam) + phi_f(r, 2 * math.pi - lam) - cmath.exp(-1j * r * math.cos(lam))) < 1e-14
    rng = np.random.default_rng(4)
    for _ in range(20):
        bc = BC.DIRICHLET if rng.random() < 0.5 else BC.NEUMANN
        ti = rng.uniform(0, math.pi)
        p = WedgeProblem(math.pi, ti, 1.0, bc)
        r, th = rng.uniform(0.1, 10), rng.uniform(-math.pi, math.pi)
        val = phi_f(r, th - ti) + p.sign * phi_f(r, th + ti - 2 * math.pi)
        assert abs(val - phi_halfplane_fresnel(PolarPoint(r, th), p)) < 1e-12


def test_helmholtz_residual():
    p = wedge(0.3, k=2.0)
    h = 1e-3 / p.k
    for x0, y0 in ((0.8, 0.3), (-0.5, 1.1), (1.5, -0.7)):
        def f(x, y):
            return phi_total(PolarPoint(math.hypot(x, y), math.atan2(y, x)), p).total

        lap = (f(x0 + h, y0) + f(x0 - h, y0) + f(x0, y0 + h) + f(x0, y0 - h) - 4 * f(x0, y0)) / h**2
        val = f(x0, y0)
        assert abs(lap + p.k**2 * val) < 1e-3 * p.k**2 * abs(val) + 1e-6


def test_reciprocity():
    p = wedge(0.0)
    rng = np.random.default_rng(5)
    n = 0
    while n < 50:
        a, b = rng.uniform(0.02, TW - 0.02, 2)
        try:
            d1 = diffraction_coefficient(a, b, p)
            d2 = diffraction_coefficient(b, a, p)
        except Exception:
            continue
        assert abs(d1 - d2) < 1e-10 * max(1, abs(d1))
        n += 1


def test_edge_exponent():
    p = wedge(0.4)
    k = p.k
    f1 = abs(phi_total(PolarPoint(1e-3 / k, 0.2), p).total)
    f2 = abs(phi_total(PolarPoint(2e-3 / k, 0.2), p).total)
    assert abs(math.log(f2 / f1) / math.log(2) - p.delta) < 0.05 * p.delta


def test_node_doubling_monotone():
    p = wedge(0.0)
    pt = PolarPoint(5.0, 0.4)
    ref = phi_diff_sdc(pt, p, QuadratureSpec(base_nodes=1024))
    errs = [abs(phi_diff_sdc(pt, p, QuadratureSpec(base_nodes=n)) - ref) for n in (32, 64, 128)]
    assert errs[0] >= errs[1] >= errs[2] or errs[0] < 1e-14
