import math

import numpy as np
import pytest

from ektau import autodiff as ad, gallery as G
from ektau import curvelab as C
from ektau.surface import UnsupportedCoordinatesError

SQ2 = math.sqrt(2.0)


def _random_curves(n_per=125, seed=3):
    rng = np.random.default_rng(seed)
    entries = [e for e in G.cmc_gallery() if not e.ar] + [G.gallery_entry("bumpcyl"), G.gallery_entry("cyl", kg=0.5)]
    for e in entries:
        (uc, vc), w = e.center, e.half_width
        a, b, c, d = rng.uniform(0.3, 1.0, 4) * w
        f, g = rng.uniform(1, 3, 2)
        yield e, C.CurveOnSurface(e.immersion, lambda s, a=a, b=b, c=c, d=d, f=f, g=g:
                                  (uc + a * ad.sin(f * s) + b * s, vc + c * ad.cos(g * s) + d * s),
                                  np.linspace(-1, 1, n_per))


def test_eigenvector_and_quadratic_form_tests_agree():
    """Over ~1000 samples: |II_AR(X, JX)| / |X|^2 equals the normalised S_AR X ^ X test."""
    total = 0
    for e, c in _random_curves():
        rep = C.ar_locus_residual(c)
        np.testing.assert_allclose(rep.columns["residual"], rep.columns["eigen"], atol=1e-10)
        ok = np.isfinite(rep.columns["im_pair"])
        np.testing.assert_allclose(-2 * rep.columns["im_pair"][ok], rep.columns["signed"][ok], atol=1e-10)
        total += len(c.s)
    assert total >= 1000


def test_residual_is_parametrisation_and_orientation_invariant():
    c = C.CurveOnSurface(G.vertical_plane_h2xr(), lambda s: (0.3 + 0.5 * ad.sin(s), 0.2 * s + s * s),
                         np.linspace(-0.8, 0.8, 17))
    base = C.ar_locus_residual(c).columns["residual"]
    rev = C.ar_locus_residual(c.reversed()).columns["residual"][::-1]
    np.testing.assert_allclose(rev, base, atol=1e-13)
    # s = r^3 + r is a monotone reparametrisation; samples at the same trace points
    from scipy.optimize import brentq
    g = lambda r: r**3 + r
    ginv = lambda s: brentq(lambda r: r**3 + r - s, -3, 3, xtol=1e-15)
    rp = C.ar_locus_residual(c.reparametrised(g, ginv)).columns["residual"]
    np.testing.assert_allclose(rp, base, atol=1e-12)
    # a constant-speed rescaling also leaves it unchanged
    fast = C.CurveOnSurface(c.surface, lambda s: c.uv(2 * s), c.s / 2)
    np.testing.assert_allclose(C.ar_locus_residual(fast).columns["residual"], base, atol=1e-13)


def test_lines_of_curvature_on_ar_and_non_ar_surfaces():
    # any curve on an AR surface is an AR line of curvature
    cap = G.gallery_entry("rotsphere")
    c = C.CurveOnSurface(cap.immersion, lambda s: (cap.center[0] + 0.1 * ad.sin(s), s), np.linspace(0, 2, 11))
    assert C.ar_locus_residual(c).max("residual") <= 1e-10
    # on the geodesic plane the coordinate lines are AR lines of curvature, the diagonals are not
    pl = G.vertical_plane_h2xr()
    horiz = C.CurveOnSurface(pl, lambda s: (s, 0.3 + 0 * s), np.linspace(-1, 1, 9))
    diag = C.CurveOnSurface(pl, lambda s: (s, s), np.linspace(-1, 1, 9))
    assert C.ar_locus_residual(horiz).max("residual") <= 1e-12
    assert C.ar_locus_residual(diag).max("residual") >= 0.4


def test_curve_classification():
    pl = G.vertical_plane_h2xr()
    horiz = C.CurveOnSurface(pl, lambda s: (s, 0.3 + 0 * s), np.linspace(-1, 1, 9))
    vert = C.CurveOnSurface(pl, lambda s: (0.2 + 0 * s, s), np.linspace(-1, 1, 9))
    f = C.classify_curve(horiz)
    assert f.horizontal and not f.vertical
    f = C.classify_curve(vert)
    assert f.vertical and not f.horizontal
    ex = G.example_intersection()
    f = C.classify_curve(ex.c1)
    assert not f.horizontal and not f.vertical
    with pytest.raises(UnsupportedCoordinatesError):
        C.classify_curve(G.nil_fiber_pair().c1)


def test_regularity_and_trace_errors():
    pl = G.vertical_plane_h2xr()
    stuck = C.CurveOnSurface(pl, lambda s: (0 * s + 0.1, 0 * s), np.linspace(0, 1, 5))
    with pytest.raises(C.RegularityError):
        C.ar_locus_residual(stuck)
    a = C.CurveOnSurface(pl, lambda s: (s, 0 * s), np.linspace(0, 1, 5))
    b = C.CurveOnSurface(pl, lambda s: (s, 0 * s + 0.1), np.linspace(0, 1, 5))
    with pytest.raises(C.TraceMismatchError):
        C.IntersectionData.build(a, b)
    with pytest.raises(C.TraceMismatchError):
        C.IntersectionData.build(a, C.CurveOnSurface(pl, lambda s: (s, 0 * s), np.linspace(0, 1, 6)))


def test_tracer_follows_the_example_curve():
    ex = G.example_objects()
    p1, p2 = C.trace_intersection(ex.plane, ex.sphere, (float(G.example_r(0.0)), 0.0), (0.0, math.pi / 2), 0.02, 40)
    for x, y in zip(p1, p2):
        assert abs(y[1] - math.pi / 2) <= 1e-9
        assert np.abs(ex.plane(*x) - G.example_curve_point(y[0])).max() <= 1e-9


def test_example_contact_is_orthogonal_and_not_transporting():
    ix = G.example_intersection()
    assert np.abs(ix.d).max() <= 1e-8 and ix.transversal
    cb = C.key_lemma_condition_b(ix)
    assert cb.max("residual") >= 0.3
    assert cb.max("agreement") <= 1e-12
    np.testing.assert_allclose(cb.columns["angle_form"], cb.columns["residual"], atol=1e-12)
    rep = C.key_lemma_verify(ix)
    assert rep.verdict is C.Verdict.Unmet and rep.maxima["ar2"] <= 1e-10 and rep.maxima["ar1"] >= 0.4
    assert C.corollary_config(ix).matched == set()


@pytest.mark.parametrize("build,configs", [
    (G.nil_fiber_pair, {C.Config.VerticalBoth, C.Config.TransversalOppositeNu}),
    (lambda: G.mirrored_caps()[0], {C.Config.Horizontal, C.Config.OppositeNuEqualH}),
    (G.tangent_nil_planes, {C.Config.TangentSameNormal}),
])
def test_positive_configurations(build, configs):
    ix = build()
    rep = C.key_lemma_verify(ix)
    assert rep.verdict is C.Verdict.Verified
    assert all(v <= 1e-5 for v in rep.maxima.values())
    conf = C.corollary_config(ix)
    assert conf.matched == configs and all(conf.implied_ok.values())
    assert ix.rotated_normal(1e-3).mutated()
    mut = C.key_lemma_verify(ix.rotated_normal(1e-3))
    assert mut.verdict is C.Verdict.Unmet and any("angle" in r or "normal" in r for r in mut.reasons)


def test_tangent_route():
    ix = G.tangent_nil_planes()
    assert ix.tangent_mask.all() and not ix.transversal
    rep = C.key_lemma_verify(ix)
    assert rep.route == "tangent" and rep.maxima["normal_gap"] <= 1e-12


def test_nu_mutations():
    ix = G.mirrored_caps()[0]
    n1, n2 = ix.nu()
    assert np.abs(n1 + n2).max() <= 1e-12
    m = ix.shifted_nu(1e-3)
    assert abs(np.abs(m.nu()[1] - n2).max() - 1e-3) <= 1e-12
    assert C.key_lemma_verify(m).verdict is C.Verdict.Unmet
    # a constant rotation keeps the contact angle constant: the lemma still applies
    # but the opposite-angle-function configuration is gone
    const = ix.rotated_normal(1e-3, profile="constant")
    assert C.key_lemma_verify(const).verdict is C.Verdict.Verified
    assert C.Config.OppositeNuEqualH not in C.corollary_config(const).matched
    with pytest.raises(ValueError):
        G.nil_fiber_pair().shifted_nu(1e-3)


def _cap_disk():
    ix, prof, wc, _ = G.mirrored_caps()
    sph = ix.c1.surface
    arc = C.CurveOnSurface(sph, lambda t: (wc + 0 * t, t), np.linspace(0, 2 * math.pi, 65))
    lo = prof.w_range[0]
    interior = [(w, a) for w in np.linspace(lo + 0.5, wc, 6) for a in np.linspace(0, 6, 5)]
    return sph, arc, interior, ix


def test_disk_report_on_a_capillary_cap():
    sph, arc, interior, ix = _cap_disk()
    rep = C.disk_report(sph, C.boundary_from([arc]), interior, [C.Companion(0, ix)])
    assert rep.verdict == C.PREDICTION and not rep.violated
    assert rep.QAR_max <= 1e-10 and rep.arcs_are_ar_lines and not rep.minimal
    rep3 = C.disk_report(sph, C.boundary_from([arc], [2.0, 2.0, 2.0]), interior)
    assert rep3.vertex_ok_le3 and rep3.verdict == C.PREDICTION
    assert C.disk_report(sph, C.boundary_from([arc], [2.0, 2.0, 2.0]), interior, strict_vertices=True).violated
    quad = C.disk_report(sph, C.boundary_from([arc], [math.pi / 2] * 4), interior)
    assert quad.vertices_below_pi == 4 and any("4 vertices" in v for v in quad.violated)


def test_disk_report_on_the_planar_example():
    ex = G.example_objects()
    loop = C.CurveOnSurface(ex.plane, G.boundary_loop, np.linspace(-math.pi, 3 * math.pi, 401))
    rep = C.disk_report(ex.plane, C.boundary_from([loop]), [(0.0, 0.0), (0.3, 0.2)], [C.Companion(0, G.example_intersection())])
    assert rep.minimal and not rep.arcs_are_ar_lines
    assert any("not an AR line of curvature" in v for v in rep.violated)
    assert any("minimal" in v for v in rep.violated)
    assert abs(rep.QAR_max - 0.25 / (2 * 0.5)) <= 1e-12  # |Q^AR| / (2 lam) with lam = 1/2


def test_boundary_spec_errors():
    pl = G.vertical_plane_h2xr()
    open_arc = C.CurveOnSurface(pl, lambda s: (s, 0 * s), np.linspace(0, 1, 5))
    with pytest.raises(C.BoundarySpecError):
        C.boundary_from([open_arc]).check_closed()
    with pytest.raises(C.BoundarySpecError):
        C.boundary_from([open_arc], [7.0])
    back = C.CurveOnSurface(pl, lambda s: (1 - s, 0 * s), np.linspace(0, 1, 5))
    C.boundary_from([open_arc, back]).check_closed()
