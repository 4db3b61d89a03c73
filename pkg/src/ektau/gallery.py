"""Reference surfaces: closed-form slices, vertical planes and cylinders, rotational CMC
meridians from the profile ODE, and the plane/sphere pair in H^2 x R."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from . import autodiff as ad
from .ambient import (
    AmbientChart,
    ParameterError,
    SpaceParams,
    _cn,
    _sn,
    cartan,
    hyperboloid,
    polar,
)
from .surface import ConformalReparam, ExprImmersion, Immersion, JetImmersion, point_geometry


class NumericError(RuntimeError):
    """Integrator or root finder failed."""


class UnsupportedError(ValueError):
    pass


# -- closed-form surfaces ----------------------------------------------------------------------


def slice_surface(params: SpaceParams | None = None, height: float = 0.0) -> ExprImmersion:
    """Horizontal slice ``z = height`` in the Cartan chart of ``M^2(kappa) x R``."""
    params = params or SpaceParams(-1, 0.0)
    if params.tau != 0.0:
        raise UnsupportedError("slices are surfaces only in product spaces (tau = 0)")
    chart = AmbientChart(params)
    return ExprImmersion(chart, lambda x, y: (x, y, 0.0 * x + height), name=f"slice[{params.kappa:g}]",
                         domain=chart_domain(chart))


def chart_domain(chart: AmbientChart):
    k = chart.params.kappa
    if k >= 0:
        return None
    return lambda x, y: 1.0 + k * (x * x + y * y) / 4.0 > 0.05


def vertical_plane_h2xr() -> ExprImmersion:
    """Totally geodesic vertical plane ``(cosh x, 0, sinh x, y)`` in the hyperboloid model."""
    return ExprImmersion(hyperboloid(), lambda x, y: (ad.cosh(x), 0.0 * x, ad.sinh(x), y), name="plane")


def vertical_plane_nil3(tau: float = 0.5, beta: float = 0.0) -> ExprImmersion:
    """Vertical plane through the fibre over the origin at angle ``beta`` in Nil_3."""
    cb, sb = math.cos(beta), math.sin(beta)
    return ExprImmersion(cartan(0, tau), lambda u, v: (cb * u, sb * u, v), name=f"nilplane[{beta:.6g}]")


def vertical_cylinder_nil3(radius: float = 1.0, tau: float = 0.5) -> ExprImmersion:
    """Fibre cylinder of radius ``r`` in Nil_3; the vertical shift ``tau r u`` makes ``(u, v)`` isothermal."""
    r = radius

    def fn(u, v):
        return r * ad.cos(u / r), r * ad.sin(u / r), v + tau * r * u

    return ExprImmersion(cartan(0, tau), fn, name=f"nilcyl[{r:g},{tau:g}]")


def _cylinder_curve(kg: float):
    """Unit-speed curve of geodesic curvature ``kg`` in the hyperboloid (three components)."""
    if kg > 1.0:
        R = math.atanh(1.0 / kg)
        c, s = math.cosh(R), math.sinh(R)
        return lambda x: (c + 0.0 * x, s * ad.cos(x / s), s * ad.sin(x / s))
    if kg == 1.0:
        return lambda x: (1.0 + 0.5 * x * x, x, 0.5 * x * x)
    d = math.atanh(kg)
    c, s = math.cosh(d), math.sinh(d)
    return lambda x: (c * ad.cosh(x / c), c * ad.sinh(x / c), s + 0.0 * x)


def vertical_cylinder_h2xr(kg: float) -> ExprImmersion:
    """Vertical cylinder over a curve of constant geodesic curvature ``kg >= 0``;
    unit-speed coordinates and the normal giving ``H = kg / 2``."""
    if kg < 0:
        raise ParameterError("geodesic curvature must be non-negative")
    c = _cylinder_curve(kg)
    imm = ExprImmersion(hyperboloid(), lambda x, y: (*c(x), y), name=f"cyl[{kg:.6g}]")
    if point_geometry(imm, 0.0, 0.0).H < 0:
        imm = ExprImmersion(hyperboloid(), lambda x, y: (*c(-x), y), name=f"cyl[{kg:.6g}]")
    return imm


def umbrella(kappa: float = 0.0, tau: float = 0.5) -> ExprImmersion:
    """The surface ``z = 0`` in conformal polar coordinates ``(w, angle)``, ``w < 0``;
    radius ``r = 1 / (tau sinh(-w))``."""
    if tau == 0.0:
        raise UnsupportedError("use slice_surface for tau = 0")
    chart = cartan(kappa, tau)

    def fn(w, a):
        r = 1.0 / (abs(tau) * ad.sinh(-w))
        return (r * ad.cos(a), r * ad.sin(a), 0.0 * w)

    dom = None
    if kappa < 0:
        # keep r below the Cartan-disc radius 2
        wmax = -math.asinh(1.0 / (abs(tau) * 1.8))
        dom = lambda w, a: w < wmax
    else:
        dom = lambda w, a: w < 0
    return ExprImmersion(chart, fn, name=f"umbrella[{kappa:g},{tau:g}]", domain=dom)


# -- the plane/sphere pair in H^2 x R ---------------------------------------------------------------

SQ2 = math.sqrt(2.0)


def example_r(u):
    return 2.0 * ad.arcsinh(ad.sqrt(1.0 - u * u))


def example_h(u):
    return (4.0 / SQ2) * ad.arcsin((SQ2 / 2.0) * u)


def example_sphere() -> ExprImmersion:
    """Rotational sphere of mean curvature ``1/sqrt 2`` in the printed ``(u, v)`` parameters
    (not conformal); ``|u| < 1``."""

    def fn(u, v):
        r = example_r(u)
        return (ad.cosh(r), ad.sinh(r) * ad.cos(v), ad.sinh(r) * ad.sin(v), example_h(u))

    imm = ExprImmersion(hyperboloid(), fn, name="sphere", domain=lambda u, v: abs(u) < 1.0)
    return imm


def example_sphere_normal(u, v) -> np.ndarray:
    """Closed-form unit normal of :func:`example_sphere` (direction as printed,
    ``(h' sinh r, h' cos v cosh r, h' sin v cosh r, -r')``, normalised)."""
    r = float(example_r(u))
    r1 = ad.derivative(example_r, u)
    h1 = ad.derivative(example_h, u)
    n = np.array([h1 * math.sinh(r), h1 * math.cos(v) * math.cosh(r), h1 * math.sin(v) * math.cosh(r), -r1])
    g = np.diag([-1.0, 1.0, 1.0, 1.0])
    return n / math.sqrt(n @ g @ n)


def example_sphere_conformal() -> ExprImmersion:
    """The same sphere in conformal parameters ``(w, v)``: ``u = sqrt2 q / sqrt(1 + q^2)``, ``q = tanh w``."""

    def fn(w, v):
        q = ad.tanh(w)
        u = SQ2 * q / ad.sqrt(1.0 + q * q)
        r = example_r(u)
        return (ad.cosh(r), ad.sinh(r) * ad.cos(v), ad.sinh(r) * ad.sin(v), example_h(u))

    return ExprImmersion(hyperboloid(), fn, name="sphere-conformal")


def example_curve_point(s: float, t: float = math.pi / 2) -> np.ndarray:
    r = float(example_r(s))
    return np.array([math.cosh(r), 0.0, math.sinh(r) * math.sin(t), float(example_h(s))])


def boundary_loop(sig):
    """Closed smooth parametrisation, in plane coordinates ``(x, y)``, of the
    plane/sphere intersection; ``sig`` in ``[-pi, 3 pi)``.  ``|sig| <= pi`` is the
    ``t = pi/2`` half."""
    return 2.0 * ad.arcsinh(ad.cos(sig / 2.0)), 2.0 * SQ2 * ad.arcsin(ad.sin(sig / 2.0) / SQ2)


@dataclass
class ExampleObjects:
    plane: Immersion
    sphere: Immersion
    sphere_conformal: Immersion
    t: float
    eps: float

    def curve(self, s: float) -> np.ndarray:
        return example_curve_point(s, self.t)

    def on_sphere(self, s: float) -> tuple[float, float]:
        return s, self.t

    def on_plane(self, s: float) -> tuple[float, float]:
        return math.copysign(1.0, math.sin(self.t)) * float(example_r(s)), float(example_h(s))

    @property
    def s_range(self) -> tuple[float, float]:
        return -1.0 + self.eps, 1.0 - self.eps


def example_objects(t: float = math.pi / 2, eps: float = 0.05) -> ExampleObjects:
    if not (math.isclose(t, math.pi / 2) or math.isclose(t, 3 * math.pi / 2)):
        raise ParameterError("t must be pi/2 or 3 pi/2")
    return ExampleObjects(vertical_plane_h2xr(), example_sphere(), example_sphere_conformal(), t, eps)


# -- rotational CMC meridians ---------------------------------------------------------------------------


class Family(enum.Enum):
    Sphere = "S2_H"
    DiskType = "D2_H"
    Catenoidal = "C2_H"
    Parabolic = "P2_H"
    Slice = "slice"
    Cylinder = "cylinder"


@dataclass
class MeridianProfile:
    """Profile ``(rho(s), h(s))`` with arc length ``s`` and conformal parameter ``w``."""

    H: float
    params: SpaceParams
    family: Family
    w: np.ndarray
    s: np.ndarray
    rho: np.ndarray
    h: np.ndarray
    sigma: np.ndarray
    dense: object = field(default=None, repr=False)
    meta: dict = field(default_factory=dict)

    @property
    def w_range(self) -> tuple[float, float]:
        return float(self.w[0]), float(self.w[-1])

    def state(self, w: float) -> np.ndarray:
        return self.dense(w)


AXIS_STEP = 1e-3


def _rhs_w(kappa: float, H: float):
    def f(w, y):
        rho, h, sig, s = y
        sn, cn = _sn(kappa, rho), _cn(kappa, rho)
        return [sn * math.cos(sig), sn * math.sin(sig), 2 * H * sn - math.sin(sig) * cn, sn]

    return f


def _axis_start(kappa: float, H: float, s0: float = AXIS_STEP):
    """Series start off the axis (umbilic point) at arc length ``s0``."""
    rho = s0 - H * H * s0**3 / 6.0
    sig = H * s0 + H * kappa * s0**3 / 12.0
    h = 0.5 * H * s0 * s0
    return [rho, h, sig, s0], math.log(s0)


def _integrate(f, w0, y0, w1, events=None, rtol=1e-13, atol=1e-14):
    sol = solve_ivp(f, (w0, w1), y0, method="DOP853", dense_output=True, rtol=rtol, atol=atol, events=events)
    if sol.status < 0:
        raise NumericError(f"profile integration failed: {sol.message}")
    return sol


def _admissible(params: SpaceParams, H: float, family: Family):
    k = params.kappa
    if params.tau != 0.0:
        raise ParameterError("rotational meridians are generated in product spaces only (tau = 0)")
    if k not in (-1, 1):
        raise ParameterError("rotational meridians need kappa = -1 or +1")
    if not H > 0:
        raise ParameterError("H must be positive")
    if family is Family.Sphere and not 4 * H * H + k > 0:
        raise ParameterError("spheres need 4H^2 + kappa > 0")
    if family in (Family.DiskType, Family.Catenoidal, Family.Parabolic):
        if k != -1 or not 2 * H <= 1.0:
            raise ParameterError(f"{family.value} needs kappa = -1 and H <= 1/2")
        if family is not Family.DiskType and not 2 * H < 1.0:
            raise ParameterError(f"{family.value} needs H < 1/2")


def neck_radius(H: float) -> float:
    """Neck radius of the catenoidal family with vanishing AR differential (kappa = -1):
    ``coth(rho0) = (H^2 + 1/4) / H``."""
    c = (H * H + 0.25) / H
    return 0.5 * math.log((c + 1.0) / (c - 1.0))


def _qar_at_neck(H: float, rho0: float) -> float:
    """Measured AR coefficient at a vertical-tangent profile point of radius ``rho0`` (kappa = -1)."""
    from .arpair import ar_operator

    prof = MeridianProfile(H, SpaceParams(-1, 0.0), Family.Catenoidal, np.array([-1.0, 1.0]), np.zeros(2),
                           np.zeros(2), np.zeros(2), np.zeros(2), lambda w: np.array([rho0, 0.0, math.pi / 2, 0.0]))
    q = ar_operator(revolution(prof), 0.0, 0.0).Q_AR
    return float(q.real)


def rotational_cmc(params: SpaceParams, H: float, family: Family = Family.Sphere, length: float = 3.0,
                   samples: int = 401) -> tuple[MeridianProfile, Immersion]:
    """Integrate the CMC profile ODE and assemble the rotation surface in conformal
    parameters ``(w, angle)`` of the polar chart.

    ``length`` bounds the arc length for the non-compact families.
    """
    family = Family(family)
    _admissible(params, H, family)
    k = params.kappa
    f = _rhs_w(k, H)
    if family is Family.Parabolic:
        return _parabolic(params, H, length, samples)
    if family is Family.Catenoidal:
        rho0 = brentq(lambda r: _qar_at_neck(H, r), 1e-3, 20.0, xtol=1e-15)
        sols = []
        for direction in (-1.0, 1.0):
            def g(w, y, d=direction):
                return [d * c for c in f(w, [y[0], y[1], y[2], y[3]])]

            def too_far(w, y):
                return abs(y[3]) - length
            too_far.terminal = True
            sol = _integrate(g, 0.0, [rho0, 0.0, math.pi / 2, 0.0], 50.0, events=[too_far])
            sols.append(sol)
        wl, wr = -sols[0].t[-1], sols[1].t[-1]

        def dense(w):
            return sols[1].sol(w) if w >= 0 else sols[0].sol(-w)

        meta = {"neck_radius": rho0, "neck_closed_form": neck_radius(H)}
        w_lo, w_hi = wl, wr
    else:
        y0, w0 = _axis_start(k, H)

        def back_to_axis(w, y):
            return y[0] - AXIS_STEP
        back_to_axis.terminal = True
        back_to_axis.direction = -1

        def too_far(w, y):
            return y[3] - length
        too_far.terminal = True
        events = [back_to_axis] if family is Family.Sphere else [too_far, back_to_axis]
        sol = _integrate(f, w0, y0, w0 + 200.0, events=events)
        if family is Family.Sphere and sol.status != 1:
            raise NumericError("sphere profile did not return to the axis")
        dense = sol.sol
        w_lo, w_hi = w0, float(sol.t[-1])
        meta = {}
    ws = np.linspace(w_lo, w_hi, samples)
    Y = np.array([dense(w) for w in ws])
    prof = MeridianProfile(H, params, family, ws, Y[:, 3], Y[:, 0], Y[:, 1], Y[:, 2], dense, meta)
    if family is Family.Sphere:
        rho_end, _, sig_end, s_end = dense(w_hi)
        s1 = brentq(lambda x: x - H * H * x**3 / 6.0 - rho_end, 0.0, 2 * AXIS_STEP + rho_end, xtol=1e-18)
        prof.meta["axis_gap"] = float(rho_end)
        prof.meta["axis_closure"] = float(abs(sig_end + H * s1 + H * k * s1**3 / 12.0 - math.pi))
        prof.meta["length"] = float(s_end + s1)
    return prof, revolution(prof)


def revolution(prof: MeridianProfile) -> JetImmersion:
    k, H = prof.params.kappa, prof.H
    chart = polar(k)
    lo, hi = prof.w_range

    def jet(w, a):
        rho, h, sig, _ = prof.state(w)
        sn, cn = float(_sn(k, rho)), float(_cn(k, rho))
        cs, ss = math.cos(sig), math.sin(sig)
        rw, hw = sn * cs, sn * ss
        sw = 2 * H * sn - ss * cn
        rww = cn * rw * cs - sn * ss * sw
        hww = cn * rw * ss + sn * cs * sw
        p = np.array([rho, a, h])
        d1 = np.array([[rw, 0.0], [0.0, 1.0], [hw, 0.0]])
        d2 = np.zeros((3, 2, 2))
        d2[0, 0, 0], d2[2, 0, 0] = rww, hww
        return p, d1, d2

    return JetImmersion(chart, jet, name=f"rot[{prof.family.value},{k:g},{H:.6g}]",
                        domain=lambda w, a: lo <= w <= hi)


def mirrored(prof: MeridianProfile, height: float) -> JetImmersion:
    """Reflection of a rotation surface in the slice ``z = height``, keeping the
    reflected normal (so the mean curvature is unchanged)."""
    base = revolution(prof)

    def jet(w, a):
        p, d1, d2 = base.jet(w, -a)
        p = p.copy()
        p[1] = a
        p[2] = 2 * height - p[2]
        d1 = d1.copy()
        d1[2] *= -1
        d2 = d2.copy()
        d2[2] *= -1
        return p, d1, d2

    return JetImmersion(base.chart, jet, name=f"{base.name}@mirror", domain=base.domain)


def _parabolic(params: SpaceParams, H: float, length: float, samples: int):
    """Surfaces invariant under parabolic translations (experimental).

    Profile in horocycle coordinates ``(eta, h)``: ``eta' = cos(sigma)``,
    ``h' = sin(sigma)``, ``sigma' = 2H - sin(sigma)``; the AR condition selects the
    straight profile ``sin(sigma) = 2H``.
    """

    def f(s, y):
        eta, h, sig = y
        return [math.cos(sig), math.sin(sig), 2 * H - math.sin(sig)]

    sig0 = math.asin(2 * H)
    sol = _integrate(f, 0.0, [0.0, 0.0, sig0], length)
    ss = np.linspace(0.0, length, samples)
    Y = np.array([sol.sol(s) for s in ss])
    c0 = math.cos(sig0)
    # conformal parameter: Y_uhp = w cos(sigma0), height = -tan(sigma0) log(Y_uhp)
    ws = np.exp(-Y[:, 0]) / c0
    prof = MeridianProfile(H, params, Family.Parabolic, ws, ss, Y[:, 0], Y[:, 1], Y[:, 2], sol.sol,
                           {"experimental": True, "sigma_drift": float(np.ptp(Y[:, 2]))})
    return prof, parabolic_surface(H)


def parabolic_surface(H: float) -> ExprImmersion:
    """Closed form of the straight-profile parabolic surface in the hyperboloid model,
    conformal parameters ``(X, w)``, ``w > 0``."""
    c0 = math.sqrt(1.0 - 4 * H * H)
    tn = 2 * H / c0

    def fn(X, w):
        Y = w * c0
        r2 = X * X + Y * Y
        return ((r2 + 1.0) / (2 * Y), X / Y, (r2 - 1.0) / (2 * Y), -tn * ad.log(Y))

    imm = ExprImmersion(hyperboloid(), fn, name=f"parabolic[{H:.6g}]", domain=lambda X, w: w > 0)
    if point_geometry(imm, 0.0, 1.0).H < 0:
        def fn2(X, w):
            a, b, c, d = fn(X, w)
            return (a, -b, c, d)
        imm = ExprImmersion(hyperboloid(), fn2, name=imm.name, domain=imm.domain)
    return imm


# -- non-CMC control ----------------------------------------------------------------------------------


def bumped_cylinder(base: float = 2.0, eps: float = 0.1, width: float = 4.0, span: float = 1.5) -> JetImmersion:
    """Vertical cylinder in H^2 x R over the unit-speed curve with geodesic curvature
    ``base + eps exp(-width s^2)`` (mean curvature not constant)."""
    eta = np.diag([-1.0, 1.0, 1.0])

    def k(s):
        return base + eps * math.exp(-width * s * s)

    def f(s, y):
        c, c1, n = y[:3], y[3:6], y[6:]
        return np.concatenate([c1, c + k(s) * n, -k(s) * c1])

    y0 = np.array([1.0, 0, 0, 0, 1.0, 0, 0, 0, 1.0])
    fw = _integrate(f, 0.0, y0, span + 0.1)
    bw = _integrate(f, 0.0, y0, -span - 0.1)
    _ = eta

    def state(s):
        return fw.sol(s) if s >= 0 else bw.sol(s)

    def jet(s, y):
        st = state(s)
        c, c1, n = st[:3], st[3:6], st[6:]
        c2 = c + k(s) * n
        p = np.array([*c, y])
        d1 = np.zeros((4, 2))
        d1[:3, 0] = c1
        d1[3, 1] = 1.0
        d2 = np.zeros((4, 2, 2))
        d2[:3, 0, 0] = c2
        return p, d1, d2

    imm = JetImmersion(hyperboloid(), jet, name=f"bumpcyl[{eps:g}]", domain=lambda s, y: abs(s) <= span)
    if point_geometry(imm, 0.0, 0.0).H < 0:
        imm = JetImmersion(hyperboloid(), lambda s, y: _negate_y(jet(s, -y)), name=imm.name, domain=imm.domain)
    return imm


def _negate_y(j):
    p, d1, d2 = j
    d1 = d1.copy()
    d1[:, 1] *= -1
    return p, d1, d2


def wavy(base: Immersion, c: float = 0.5) -> ConformalReparam:
    """``zeta -> base((exp(c zeta) - 1) / c)``: a conformal change of parameters that makes
    translation-invariant coefficients vary (non-polynomially) across the grid."""
    return ConformalReparam(base, lambda z: (np.exp(c * z) - 1) / c, lambda z: np.exp(c * z),
                            lambda z: c * np.exp(c * z), name=f"{base.name}@wavy")


# -- registry ----------------------------------------------------------------------------------------


@dataclass
class GalleryEntry:
    name: str
    immersion: Immersion
    center: tuple[float, float]
    half_width: float
    cmc: bool = True
    ar: bool | None = None
    H: float | None = None
    QAR: complex | None = None
    notes: str = ""


def gallery_entry(name: str, kappa: float | None = None, tau: float | None = None, H: float | None = None,
                  kg: float | None = None) -> GalleryEntry:
    """Named gallery surface with a default sampling region."""
    if name == "slice":
        p = SpaceParams(-1 if kappa is None else kappa, 0.0 if tau is None else tau)
        return GalleryEntry(name, slice_surface(p), (0.2, 0.1), 0.1, ar=True, H=0.0, QAR=0j)
    if name == "plane":
        return GalleryEntry(name, vertical_plane_h2xr(), (0.3, 0.2), 0.1, ar=False, H=0.0, QAR=-0.25 + 0j)
    if name == "nilplane":
        return GalleryEntry(name, vertical_plane_nil3(0.5 if tau is None else tau), (0.3, 0.2), 0.1,
                            ar=True, H=0.0, QAR=0j)
    if name == "cyl":
        kg = 1.0 if kg is None else kg
        return GalleryEntry(name, vertical_cylinder_h2xr(kg), (0.2, 0.1), 0.1, ar=(kg == 1.0), H=kg / 2,
                            QAR=(kg * kg - 1) / 4 + 0j)
    if name == "nilcyl":
        return GalleryEntry(name, vertical_cylinder_nil3(1.0, 0.5 if tau is None else tau), (0.2, 0.1), 0.1,
                            ar=False, H=-0.5, notes="H < 0 for the chart orientation")
    if name == "cylwavy":
        kg = 2.0 if kg is None else kg
        return GalleryEntry(name, wavy(vertical_cylinder_h2xr(kg)), (0.2, 0.1), 0.1, ar=(kg == 1.0), H=kg / 2)
    if name == "rotsphere":
        H = 1 / SQ2 if H is None else H
        p = SpaceParams(-1 if kappa is None else kappa, 0.0)
        prof, imm = rotational_cmc(p, H, Family.Sphere)
        wc = 0.5 * (prof.w_range[0] + prof.w_range[1])
        return GalleryEntry(name, imm, (wc, 0.3), 0.1, ar=True, H=H, QAR=0j)
    if name == "sphere4":
        return GalleryEntry(name, example_sphere_conformal(), (0.2, 0.3), 0.1, ar=True, H=1 / SQ2, QAR=0j)
    if name == "umbrella":
        k = 0.0 if kappa is None else kappa
        t = 0.5 if tau is None else tau
        return GalleryEntry(name, umbrella(k, t), (-2.0, 0.3), 0.1, ar=None, H=0.0)
    if name == "parabolic":
        H = 0.3 if H is None else H
        return GalleryEntry(name, parabolic_surface(H), (0.2, 1.0), 0.1, ar=True, H=H, notes="experimental")
    if name == "bumpcyl":
        return GalleryEntry(name, wavy(bumped_cylinder()), (0.0, 0.1), 0.1, cmc=False, notes="negative control")
    raise ParameterError(f"unknown gallery surface {name!r}")


GALLERY_NAMES = ("slice", "plane", "nilplane", "nilcyl", "cyl", "cylwavy", "rotsphere", "sphere4", "umbrella", "parabolic", "bumpcyl")


def cmc_gallery() -> list[GalleryEntry]:
    """Every CMC surface of the gallery with its default region (used by the suites)."""
    out = [
        gallery_entry("slice"),
        gallery_entry("slice", kappa=1),
        gallery_entry("plane"),
        gallery_entry("nilplane"),
        gallery_entry("nilcyl"),
        gallery_entry("cyl", kg=0.5),
        gallery_entry("cyl", kg=1.0),
        gallery_entry("cyl", kg=2.0),
        gallery_entry("cylwavy", kg=2.0),
        gallery_entry("rotsphere"),
        gallery_entry("rotsphere", kappa=1, H=1.0),
        gallery_entry("sphere4"),
        gallery_entry("umbrella"),
        gallery_entry("umbrella", kappa=-1, tau=0.5),
        gallery_entry("umbrella", kappa=1, tau=0.25),
        gallery_entry("parabolic"),
    ]
    return out


# -- intersection configurations ---------------------------------------------------------------------


def _line_s(n: int, a: float, b: float) -> np.ndarray:
    return np.linspace(a, b, n)


def nil_fiber_pair(beta: float = 0.7, tau: float = 0.5, n: int = 41):
    """Two vertical planes of Nil_3 meeting along the fibre over the origin at angle ``beta``."""
    from .curvelab import CurveOnSurface, IntersectionData

    s = _line_s(n, -0.5, 0.5)
    p1, p2 = vertical_plane_nil3(tau, 0.0), vertical_plane_nil3(tau, beta)
    c1 = CurveOnSurface(p1, lambda t: (0.0 * t, t), s, name="fibre@1")
    c2 = CurveOnSurface(p2, lambda t: (0.0 * t, t), s, name="fibre@2")
    return IntersectionData.build(c1, c2)


def mirrored_caps(H: float = 1 / SQ2, kappa: float = -1, fraction: float = 0.35, n: int = 64):
    """A rotational sphere and its mirror image in a slice below the equator; they
    meet along a horizontal circle with opposite angle functions."""
    from .curvelab import CurveOnSurface, IntersectionData

    prof, sph = rotational_cmc(SpaceParams(kappa, 0.0), H, Family.Sphere)
    top = float(prof.h.max())
    c = fraction * top
    lo, hi = prof.w_range
    wm = float(prof.w[np.argmax(prof.rho)])
    wc = brentq(lambda w: prof.state(w)[1] - c, lo, wm, xtol=1e-15)
    mir = mirrored(prof, c)
    if point_geometry(mir, wc, 0.0).H * point_geometry(sph, wc, 0.0).H < 0:
        mir.orientation = -mir.orientation
    s = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    c1 = CurveOnSurface(sph, lambda t: (wc + 0.0 * t, t), s, name="circle@sphere")
    c2 = CurveOnSurface(mir, lambda t: (wc + 0.0 * t, t), s, name="circle@mirror")
    return IntersectionData.build(c1, c2), prof, wc, c


def tangent_nil_planes(tau: float = 0.5, phi0: float = 0.4, shift=(0.1, -0.2), n: int = 41):
    """The same Nil_3 vertical plane in two orientation-compatible conformal
    parametrisations, meeting along the horizontal line ``x = s`` of the plane."""
    from .curvelab import CurveOnSurface, IntersectionData

    cph, sph = math.cos(phi0), math.sin(phi0)
    a0, b0 = shift
    base = vertical_plane_nil3(tau, 0.0)
    p2 = ExprImmersion(base.chart, lambda a, b: (cph * a - sph * b + a0, 0.0 * a, sph * a + cph * b + b0),
                       name="nilplane[rotated]")
    s = _line_s(n, -0.5, 0.5)

    def on2(t):
        x, z = t - a0, 0.0 * t - b0
        return (cph * x + sph * z, -sph * x + cph * z)

    c1 = CurveOnSurface(base, lambda t: (t, 0.0 * t), s, name="line@1")
    c2 = CurveOnSurface(p2, on2, s, name="line@2")
    return IntersectionData.build(c1, c2)


def example_intersection(n: int = 181, s_max: float = 0.9, t: float = math.pi / 2):
    """The plane/sphere intersection with the plane as side 1 and the sphere as side 2."""
    from .curvelab import CurveOnSurface, IntersectionData

    ex = example_objects(t)
    sign = 1.0 if math.sin(t) > 0 else -1.0
    s = np.linspace(-s_max, s_max, n)
    c1 = CurveOnSurface(ex.plane, lambda u: (sign * example_r(u), example_h(u)), s, name="gamma@plane")
    c2 = CurveOnSurface(ex.sphere, lambda u: (u, t + 0.0 * u), s, name="gamma@sphere")
    return IntersectionData.build(c1, c2)
