import math
import time

import numpy as np
import pytest
from scipy.optimize import brentq

from ektau import gallery as G
from ektau.ambient import ParameterError, SpaceParams, inner
from ektau.arpair import ar_operator
from ektau.surface import gauss_rhs, point_geometry

SQ2 = math.sqrt(2.0)
H2R = SpaceParams(-1, 0.0)


def _sphere_closed_form_error(prof):
    """Sup over samples of |rho - r(u)| where u is fixed by the sample's height,
    h = (4/sqrt2) arcsin(u/sqrt2) + pi/sqrt2 (the profile starts at the lower pole)."""
    err = 0.0
    for rho, h in zip(prof.rho, prof.h):
        u = SQ2 * math.sin((h - math.pi / SQ2) * SQ2 / 4)
        err = max(err, abs(rho - 2 * math.asinh(math.sqrt(max(0.0, 1 - u * u)))))
    return err


def test_h2xr_sphere_meridian_matches_closed_form():
    t0 = time.perf_counter()
    prof, _ = G.rotational_cmc(H2R, 1 / SQ2)
    assert time.perf_counter() - t0 < 5.0
    assert _sphere_closed_form_error(prof) <= 1e-5
    assert math.isclose(prof.h.max() + prof.h.min(), 2 * math.pi / SQ2, abs_tol=1e-5)


@pytest.mark.parametrize("kappa,H", [(-1, 1 / SQ2), (1, 1.0), (1, 0.3), (-1, 0.9)])
def test_sphere_meridians_are_symmetric(kappa, H):
    prof, _ = G.rotational_cmc(SpaceParams(kappa, 0.0), H)
    lo, hi = prof.w_range
    w_eq = brentq(lambda w: prof.state(w)[2] - math.pi / 2, lo, hi, xtol=1e-15)
    h_eq = prof.state(w_eq)[1]
    worst = 0.0
    for w, rho, h in zip(prof.w[1:-1], prof.rho[1:-1], prof.h[1:-1]):
        target = 2 * h_eq - h
        wm = brentq(lambda x: prof.state(x)[1] - target, lo, hi, xtol=1e-15)
        worst = max(worst, abs(prof.state(wm)[0] - rho))
    assert worst <= 1e-8
    assert prof.meta["axis_closure"] <= 1e-6


def test_s2xr_sphere_closes_with_positive_curvature():
    prof, imm = G.rotational_cmc(SpaceParams(1, 0.0), 1.0)
    assert prof.meta["axis_closure"] <= 1e-6
    assert prof.rho.max() < math.pi
    K = [gauss_rhs(point_geometry(imm, w, 0.0), 1, 0.0) for w in prof.w]
    assert min(K) > 0


@pytest.mark.parametrize("H", [0.1, 0.3, 0.45])
def test_catenoidal_neck_and_self_check(H):
    t0 = time.perf_counter()
    prof, imm = G.rotational_cmc(H2R, H, G.Family.Catenoidal, samples=101)
    assert time.perf_counter() - t0 < 5.0
    assert abs(prof.meta["neck_radius"] - prof.meta["neck_closed_form"]) <= 1e-10
    for w in prof.w[::10]:
        pg = point_geometry(imm, w, 0.4)
        assert abs(pg.H - H) <= 1e-6
        assert abs(ar_operator(imm, w, 0.4).Q_AR) <= 1e-6
    K = [gauss_rhs(point_geometry(imm, w, 0.0), -1, 0.0) for w in prof.w]
    assert min(K) < 0


@pytest.mark.parametrize("family,H", [(G.Family.DiskType, 0.5), (G.Family.Parabolic, 0.3), (G.Family.Parabolic, 0.1),
                                      (G.Family.Sphere, 0.8)])
def test_other_families_self_check(family, H):
    prof, imm = G.rotational_cmc(H2R, H, family, samples=61)
    pts = [(0.0, float(w)) for w in prof.w] if family is G.Family.Parabolic else [(float(w), 0.2) for w in prof.w[1:-1]]
    for u, v in pts[::6]:
        assert abs(point_geometry(imm, u, v).H - H) <= 1e-6
        assert abs(ar_operator(imm, u, v).Q_AR) <= 1e-6


@pytest.mark.parametrize("params,H,family", [
    (SpaceParams(-1, 0.0), 0.4, G.Family.Sphere),
    (SpaceParams(-1, 0.0), 0.7, G.Family.Catenoidal),
    (SpaceParams(1, 0.0), 0.3, G.Family.Catenoidal),
    (SpaceParams(-1, 0.5), 1.0, G.Family.Sphere),
    (SpaceParams(-1, 0.0), -0.8, G.Family.Sphere),
    (SpaceParams(-1, 0.0), 0.5, G.Family.Parabolic),
])
def test_inadmissible_meridian_parameters(params, H, family):
    with pytest.raises(ParameterError):
        G.rotational_cmc(params, H, family)


@pytest.mark.parametrize("kg", [0.5, 1.0, 2.0, 3.0])
def test_cylinder_family(kg):
    imm = G.vertical_cylinder_h2xr(kg)
    for u, v in [(0.2, 0.1), (-0.3, 0.5)]:
        pg = point_geometry(imm, u, v)
        assert abs(pg.H - kg / 2) <= 1e-12 and abs(pg.nu) <= 1e-14
        assert abs(ar_operator(imm, u, v).Q_AR - (kg * kg - 1) / 4) <= 1e-10


def test_nil_fibre_cylinder():
    imm = G.vertical_cylinder_nil3(1.0, 0.5)
    ratios = []
    for u, v in [(0.2, 0.1), (-1.3, 0.5), (2.0, -0.7)]:
        pg = point_geometry(imm, u, v)
        assert pg.isothermal_defect <= 1e-14
        assert abs(abs(pg.H) - 0.5) <= 1e-12 and abs(pg.nu) <= 1e-14
        d = ar_operator(imm, u, v)
        ratios.append(d.Q_AR / d.pair_hopf)
        assert abs(d.Q_AR) >= 0.1
    assert np.ptp(np.abs(ratios)) <= 1e-12 and np.ptp(np.angle(ratios)) <= 1e-12


def test_ar_membership_of_gallery():
    members, others = [], []
    for e in G.cmc_gallery():
        (uc, vc), w = e.center, e.half_width
        q = [abs(ar_operator(e.immersion, uc + a * w, vc + b * w).Q_AR) for a in (-1, 0, 1) for b in (-1, 1)]
        if e.ar:
            members.append(max(q))
        elif e.ar is False:
            others.append(min(q))
    assert max(members) <= 1e-6
    assert min(others) >= 0.05


def test_example_objects():
    ex = G.example_objects()
    lo, hi = ex.s_range
    for s in np.linspace(lo, hi, 21):
        g = ex.curve(s)
        assert np.abs(ex.plane(*ex.on_plane(s)) - g).max() <= 1e-10
        assert np.abs(ex.sphere(*ex.on_sphere(s)) - g).max() <= 1e-10
    ex2 = G.example_objects(3 * math.pi / 2)
    assert np.abs(ex2.plane(*ex2.on_plane(0.4)) - ex2.sphere(*ex2.on_sphere(0.4))).max() <= 1e-10
    with pytest.raises(ParameterError):
        G.example_objects(1.0)
    # the conformal reparametrisation covers the same sphere
    p = ex.sphere_conformal(0.3, 0.7)
    u = SQ2 * math.sin(p[3] * SQ2 / 4)
    assert abs(math.acosh(p[0]) - float(G.example_r(u))) <= 1e-12
    assert abs(inner(ex.sphere.chart, p, p, p) - p[3] ** 2 + 1) <= 1e-12


def test_boundary_loop_traces_the_intersection():
    ex = G.example_objects()
    for sig in np.linspace(-math.pi + 0.1, math.pi - 0.1, 7):
        x, y = (float(c) for c in G.boundary_loop(sig))
        u = math.sin(sig / 2)
        assert abs(x - G.example_r(u)) <= 1e-12 and abs(y - G.example_h(u)) <= 1e-12
        assert x >= 0
    x, y = (float(c) for c in G.boundary_loop(2 * math.pi))
    assert x < 0 and abs(y) <= 1e-12
    assert np.allclose([float(c) for c in G.boundary_loop(-math.pi)], [float(c) for c in G.boundary_loop(3 * math.pi)])
    _ = ex


def test_bumped_cylinder_is_not_cmc():
    e = G.gallery_entry("bumpcyl")
    Hs = [point_geometry(e.immersion, u, 0.1).H for u in np.linspace(-0.1, 0.1, 5)]
    assert np.ptp(Hs) >= 1e-3
    assert point_geometry(e.immersion, 0.0, 0.1).isothermal_defect <= 1e-10


def test_wavy_reparametrisation_is_conformal_and_preserves_H():
    base = G.vertical_cylinder_h2xr(2.0)
    wv = G.wavy(base)
    pg = point_geometry(wv, 0.2, 0.1)
    assert pg.isothermal_defect <= 1e-12 and abs(pg.H - 1.0) <= 1e-12
    assert abs(abs(ar_operator(wv, 0.2, 0.1).Q_AR) / (2 * pg.lam) - 0.75 / (2 * point_geometry(base, 0.0, 0.0).lam)) <= 1e-10


def test_gallery_registry():
    for name in G.GALLERY_NAMES:
        e = G.gallery_entry(name)
        pg = point_geometry(e.immersion, *e.center)
        if e.cmc and e.H is not None:
            assert abs(pg.H - e.H) <= 1e-8
    with pytest.raises(ParameterError):
        G.gallery_entry("torus")


def test_intersection_configurations_share_traces():
    for ix in (G.nil_fiber_pair(), G.mirrored_caps()[0], G.tangent_nil_planes(), G.example_intersection()):
        assert np.abs(ix.c1.points() - ix.c2.points()).max() <= 1e-8 or ix.chart.kind.name == "PolarProduct"
