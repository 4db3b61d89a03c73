"""Curves on surfaces: AR lines of curvature, intersections of two H-surfaces, the
intersection conditions that transport AR lines of curvature from one surface to the
other, and hypothesis reports for capillary disks."""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from . import autodiff as ad
from .ambient import AmbientChart, ChartKind, cross, inner, vertical_field
from .arpair import ar_from_geometry
from .surface import Immersion, PointGeometry, UnsupportedCoordinatesError, point_geometry

logger = logging.getLogger("ektau")

CONSTANT_ANGLE_TOL = 1e-7
TRANSVERSAL_TOL = 1e-8
TRACE_TOL = 1e-8
PRECONDITION_TOL = 1e-6
CONCLUSION_TOL = 1e-5


class RegularityError(ValueError):
    """Curve has (numerically) zero speed at a sample."""


class TraceMismatchError(ValueError):
    """Two parametrisations of an intersection curve do not share their ambient trace."""


class BoundarySpecError(ValueError):
    """Boundary arcs do not chain into a closed loop."""


# -- curves ----------------------------------------------------------------------------------


def _speed(uv: Callable, s: float) -> np.ndarray:
    out = uv(ad.HyperDual(s, 1.0))
    return np.array([c.b1 if isinstance(c, ad.HyperDual) else 0.0 for c in out], dtype=float)


@dataclass
class CurveOnSurface:
    """Curve ``s -> (u(s), v(s))`` in the parameter domain of ``surface``.

    ``uv`` should be written with :mod:`ektau.autodiff` functions so its derivative is
    exact; alternatively pass ``duv``.
    """

    surface: Immersion
    uv: Callable
    s: np.ndarray
    duv: Callable | None = None
    name: str = "curve"
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)

    def params(self) -> np.ndarray:
        return np.array([[float(ad.value(c)) for c in self.uv(s)] for s in self.s])

    def velocities(self) -> np.ndarray:
        if "vel" not in self._cache:
            d = self.duv or (lambda s: _speed(self.uv, s))
            self._cache["vel"] = np.array([np.asarray(d(s), float) for s in self.s])
        return self._cache["vel"]

    def geometry(self) -> list[PointGeometry]:
        if "pg" not in self._cache:
            self._cache["pg"] = [point_geometry(self.surface, u, v) for u, v in self.params()]
        return self._cache["pg"]

    def points(self) -> np.ndarray:
        return np.array([pg.p for pg in self.geometry()])

    def tangents(self) -> np.ndarray:
        """Ambient components of the velocity."""
        return np.array([pg.dphi @ X for pg, X in zip(self.geometry(), self.velocities())])

    def speeds(self) -> np.ndarray:
        return np.array([math.sqrt(max(X @ pg.I @ X, 0.0)) for pg, X in zip(self.geometry(), self.velocities())])

    def check_regular(self, tol: float = 1e-12) -> None:
        sp = self.speeds()
        bad = np.nonzero(sp <= tol)[0]
        if bad.size:
            raise RegularityError(f"{self.name}: zero speed at s = {self.s[bad[0]]}")

    def reversed(self) -> "CurveOnSurface":
        uv = self.uv
        return CurveOnSurface(self.surface, lambda s: uv(-s), -self.s[::-1].copy(), name=f"{self.name}^-1")

    def reparametrised(self, g: Callable, ginv: Callable) -> "CurveOnSurface":
        """Same trace through ``s = g(r)``; samples placed at ``r = ginv(s)``."""
        uv = self.uv
        rs = np.array([ginv(s) for s in self.s])
        return CurveOnSurface(self.surface, lambda r: uv(g(r)), rs, name=f"{self.name}@reparam")


@dataclass
class CurveReport:
    s: np.ndarray
    columns: dict[str, np.ndarray]
    warnings: list[str] = field(default_factory=list)

    def max(self, col: str) -> float:
        a = self.columns[col]
        a = a[np.isfinite(a)]
        return float(a.max()) if a.size else 0.0

    def to_csv(self, path) -> None:
        from .grid import fmt

        cols = list(self.columns)
        lines = [",".join(["s", *cols])]
        for i, s in enumerate(self.s):
            lines.append(",".join([fmt(s), *(fmt(self.columns[c][i]) for c in cols)]))
        from pathlib import Path

        Path(path).write_text("\n".join(lines) + "\n")


def ar_locus_residual(c: CurveOnSurface, convention: str = "codazzi") -> CurveReport:
    """Per-sample ``|II_AR(g', J g')| / |g'|^2``; zero exactly where ``g'`` is an
    eigenvector of ``S_AR``.

    Extra columns: ``eigen`` (normalised ``S_AR g'`` x ``g'``), and, at conformal
    points, ``im_pair`` = Im(pair Hopf * dz(g')^2) / |g'|^2 and ``im_QAR`` =
    Im(Q^AR dz(g')^2) / |g'|^2.  ``-2 im_pair`` equals the signed residual; ``im_QAR``
    is proportional to it when ``tau = 0``.
    """
    c.check_regular()
    params = c.surface.chart.params
    res, eig, imp, imq, signed = [], [], [], [], []
    for pg, X in zip(c.geometry(), c.velocities()):
        d = ar_from_geometry(pg, params, convention)
        n2 = float(X @ pg.I @ X)
        JX = pg.J @ X
        val = d.form(X, JX) / n2
        signed.append(val)
        res.append(abs(val))
        SX = d.S_AR @ X
        detI = float(np.linalg.det(pg.I))
        eig.append(abs(SX[0] * X[1] - SX[1] * X[0]) * math.sqrt(detI) / n2)
        if d.Q_AR is not None:
            dz = complex(X[0], X[1])
            imp.append((d.pair_hopf * dz * dz).imag / n2)
            imq.append((d.Q_AR * dz * dz).imag / n2)
        else:
            imp.append(np.nan)
            imq.append(np.nan)
    cols = {"residual": np.array(res), "signed": np.array(signed), "eigen": np.array(eig),
            "im_pair": np.array(imp), "im_QAR": np.array(imq)}
    return CurveReport(c.s, cols)


@dataclass
class CurveFlags:
    horizontal: bool
    vertical: bool
    horizontal_residual: float
    vertical_residual: float


def horizontal_residual(c: CurveOnSurface) -> np.ndarray:
    """``|<xi, g'>| / |g'|`` per sample (surface independent)."""
    chart = c.surface.chart
    out = []
    for pg, G in zip(c.geometry(), c.tangents()):
        out.append(abs(inner(chart, pg.p, pg.xi, G)) / math.sqrt(inner(chart, pg.p, G, G)))
    return np.array(out)


def vertical_residual(c: CurveOnSurface, tol: float = 1e-8) -> np.ndarray:
    """Sine of the angle between ``g'`` and ``T`` per sample (``inf`` where ``T = 0``)."""
    chart = c.surface.chart
    out = []
    for pg, G in zip(c.geometry(), c.tangents()):
        T = pg.T
        tt = inner(chart, pg.p, T, T)
        if tt <= tol * tol:
            out.append(np.inf)
            continue
        perp = G - inner(chart, pg.p, G, T) / tt * T
        out.append(math.sqrt(max(inner(chart, pg.p, perp, perp), 0.0) / inner(chart, pg.p, G, G)))
    return np.array(out)


def classify_curve(c: CurveOnSurface, tol: float = 1e-8) -> CurveFlags:
    if c.surface.chart.params.tau != 0.0:
        raise UnsupportedCoordinatesError("horizontal curves are only defined in product spaces (tau = 0)")
    c.check_regular()
    h = horizontal_residual(c)
    v = vertical_residual(c, tol)
    return CurveFlags(bool(h.max() <= tol), bool(v.max() <= tol), float(h.max()), float(v.max()))


# -- intersections ---------------------------------------------------------------------------


def _same_point(chart: AmbientChart, p, q) -> float:
    d = np.asarray(p, float) - np.asarray(q, float)
    if chart.kind is ChartKind.PolarProduct:
        d[1] = (d[1] + math.pi) % (2 * math.pi) - math.pi
        d[1] *= min(abs(p[0]), abs(q[0]))
    return float(np.abs(d).max())


@dataclass
class IntersectionData:
    c1: CurveOnSurface
    c2: CurveOnSurface
    N1: np.ndarray
    N2: np.ndarray
    d: np.ndarray
    transversal: bool
    tangent_mask: np.ndarray
    note: str = ""

    @property
    def chart(self) -> AmbientChart:
        return self.c1.surface.chart

    @classmethod
    def build(cls, c1: CurveOnSurface, c2: CurveOnSurface, tol: float = TRACE_TOL) -> "IntersectionData":
        if c1.surface.chart != c2.surface.chart:
            raise TraceMismatchError("both surfaces must live in the same chart")
        if len(c1.s) != len(c2.s):
            raise TraceMismatchError("sample counts differ")
        chart = c1.surface.chart
        g1, g2 = c1.geometry(), c2.geometry()
        gap = max(_same_point(chart, a.p, b.p) for a, b in zip(g1, g2))
        if gap > tol:
            raise TraceMismatchError(f"ambient traces differ by {gap:.3e}")
        N1 = np.array([pg.N for pg in g1])
        N2 = np.array([pg.N for pg in g2])
        return cls._with_normals(c1, c2, N1, N2)

    @classmethod
    def _with_normals(cls, c1, c2, N1, N2, note=""):
        chart = c1.surface.chart
        d = np.array([inner(chart, pg.p, a, b) for pg, a, b in zip(c1.geometry(), N1, N2)])
        tmask = np.abs(d) >= 1.0 - TRANSVERSAL_TOL
        return cls(c1, c2, N1, N2, d, bool(not tmask.any()), tmask, note)

    def rotated_normal(self, amplitude: float = 1e-3, profile: str = "linear") -> "IntersectionData":
        """Mutation: rotate ``N2`` about the curve tangent by an angle growing linearly
        from 0 to ``amplitude`` along the samples (``profile="linear"``, corrupts the
        contact angle) or by the fixed angle ``amplitude`` (``"constant"``, breaks an
        opposite-angle-function configuration while keeping the angle constant)."""
        chart = self.chart
        n = len(self.c1.s)
        if profile == "linear":
            ang = amplitude * np.linspace(0.0, 1.0, n)
        elif profile == "constant":
            ang = np.full(n, amplitude)
        else:
            raise ValueError(profile)
        N2 = []
        for k, (pg, G, N) in enumerate(zip(self.c1.geometry(), self.c1.tangents(), self.N2)):
            e = G / math.sqrt(inner(chart, pg.p, G, G))
            N2.append(math.cos(ang[k]) * N + math.sin(ang[k]) * cross(chart, pg.p, e, N))
        return IntersectionData._with_normals(self.c1, self.c2, self.N1, np.array(N2), note=f"N2 rotated by {amplitude:g}")

    def shifted_nu(self, delta: float = 1e-3) -> "IntersectionData":
        """Mutation: rotate ``N2`` about the curve tangent so that its angle function
        becomes ``nu2 + delta * r`` with ``r`` ramping from 0 to 1 along the samples.

        Raises ``ValueError`` where the rotation cannot move ``nu2`` (the normal's orbit
        about the tangent is orthogonal to the vertical field, e.g. along fibers)."""
        chart = self.chart
        n = len(self.c1.s)
        ramp = np.linspace(0.0, 1.0, n)
        N2 = []
        for k, (pg, G, N) in enumerate(zip(self.c1.geometry(), self.c1.tangents(), self.N2)):
            e = G / math.sqrt(inner(chart, pg.p, G, G))
            W = cross(chart, pg.p, e, N)
            xi = vertical_field(chart, pg.p)
            A, B = inner(chart, pg.p, N, xi), inner(chart, pg.p, W, xi)
            R = math.hypot(A, B)
            target = A + delta * ramp[k]
            if R < 1e-12 or abs(target) > R:
                raise ValueError("the angle function cannot be shifted by rotating about the tangent here")
            beta = math.atan2(B, A)
            a1, a2 = beta - math.acos(target / R), beta + math.acos(target / R)
            ang = min((math.remainder(a1, 2 * math.pi), math.remainder(a2, 2 * math.pi)), key=abs)
            N2.append(math.cos(ang) * N + math.sin(ang) * W)
        return IntersectionData._with_normals(self.c1, self.c2, self.N1, np.array(N2), note=f"nu2 shifted by {delta:g}")

    def nu(self) -> tuple[np.ndarray, np.ndarray]:
        chart = self.chart
        pts = [pg.p for pg in self.c1.geometry()]
        n1 = np.array([inner(chart, p, N, vertical_field(chart, p)) for p, N in zip(pts, self.N1)])
        n2 = np.array([inner(chart, p, N, vertical_field(chart, p)) for p, N in zip(pts, self.N2)])
        return n1, n2

    def mutated(self) -> bool:
        return bool(self.note)


@dataclass
class AngleReport:
    d: np.ndarray
    spread: float
    is_constant: bool


def intersection_angle(ix: IntersectionData, tol: float = CONSTANT_ANGLE_TOL) -> AngleReport:
    spread = float(np.ptp(ix.d))
    return AngleReport(ix.d.copy(), spread, spread <= tol)


def key_lemma_condition_b(ix: IntersectionData, convention: str = "codazzi") -> CurveReport:
    """Per-sample residual of the weighted product condition on the two rotated
    vertical parts, in the inner-product form and in the oriented-angle form.

    ``residual = |sqrt(H1^2+tau^2) P2 - sqrt(H2^2+tau^2) P1|`` with
    ``P_i = <T^i_th, N_j> <J_i T^i_th, N_j>``; the angle form uses
    ``P_i = |T_i|^2 (1 - d^2) sin(2 (w_ij - th_i)) / 2`` where ``w_ij`` is the oriented
    angle from ``T_i`` to the tangential part of ``N_j``.  Tangential samples are NaN.
    """
    chart = ix.chart
    params = chart.params
    tau = params.tau
    res, res_ang, agree = [], [], []
    warnings = []
    if ix.tangent_mask.any():
        warnings.append(f"{int(ix.tangent_mask.sum())} tangential samples excluded")
        logger.warning("condition b: %s", warnings[-1])
    for k, (pg1, pg2) in enumerate(zip(ix.c1.geometry(), ix.c2.geometry())):
        if ix.tangent_mask[k]:
            res.append(np.nan)
            res_ang.append(np.nan)
            agree.append(np.nan)
            continue
        vals, angs, roots = {}, {}, {}
        d = ix.d[k]
        for i, pg, N_i, N_o in ((1, pg1, ix.N1[k], ix.N2[k]), (2, pg2, ix.N2[k], ix.N1[k])):
            data = ar_from_geometry(pg, params, convention)
            th = data.theta or 0.0
            T = pg.T
            JT = cross(chart, pg.p, N_i, T)
            Tth = math.cos(th) * T + math.sin(th) * JT
            JTth = cross(chart, pg.p, N_i, Tth)
            vals[i] = inner(chart, pg.p, Tth, N_o) * inner(chart, pg.p, JTth, N_o)
            T2 = inner(chart, pg.p, T, T)
            if T2 > 1e-24:
                om = math.atan2(inner(chart, pg.p, N_o, JT), inner(chart, pg.p, N_o, T))
                angs[i] = 0.5 * T2 * (1.0 - d * d) * math.sin(2 * (om - th))
            else:
                angs[i] = 0.0
            roots[i] = math.hypot(pg.H, tau)
        r = abs(roots[1] * vals[2] - roots[2] * vals[1])
        ra = abs(roots[1] * angs[2] - roots[2] * angs[1])
        res.append(r)
        res_ang.append(ra)
        agree.append(abs(vals[1] - angs[1]) + abs(vals[2] - angs[2]))
    cols = {"residual": np.array(res), "angle_form": np.array(res_ang), "agreement": np.array(agree)}
    return CurveReport(ix.c1.s, cols, warnings)


class Verdict(enum.Enum):
    Verified = "verified"
    Violated = "violated"
    Unmet = "hypotheses unmet"


@dataclass
class KeyLemmaReport:
    verdict: Verdict
    route: str
    maxima: dict
    reasons: list
    tracks: dict = field(repr=False, default_factory=dict)

    def as_dict(self) -> dict:
        return {"verdict": self.verdict.value, "route": self.route, "maxima": dict(self.maxima),
                "reasons": list(self.reasons)}


def key_lemma_verify(ix: IntersectionData, convention: str = "codazzi", pre_tol: float = PRECONDITION_TOL,
                     post_tol: float = CONCLUSION_TOL) -> KeyLemmaReport:
    """Check whether an AR line of curvature of one surface is one of the other.

    Transversal curves use the constant-angle plus weighted-product conditions;
    curves of tangency use equal normals and equal mean curvature.  When a
    precondition fails nothing is asserted (verdict ``Unmet``).
    """
    reasons = []
    ang = intersection_angle(ix)
    ar1 = ar_locus_residual(ix.c1, convention)
    ar2 = ar_locus_residual(ix.c2, convention)
    tracks = {"d": ix.d, "ar1": ar1.columns["residual"], "ar2": ar2.columns["residual"]}
    maxima = {"d_spread": ang.spread, "ar1": ar1.max("residual"), "ar2": ar2.max("residual")}
    if not ang.is_constant:
        reasons.append(f"angle not constant (spread {ang.spread:.3e})")
    if ix.transversal:
        route = "transversal"
        cb = key_lemma_condition_b(ix, convention)
        tracks["cond_b"] = cb.columns["residual"]
        tracks["cond_b_angle"] = cb.columns["angle_form"]
        maxima["cond_b"] = cb.max("residual")
        maxima["cond_b_angle"] = cb.max("angle_form")
        if maxima["cond_b"] > pre_tol:
            reasons.append(f"weighted product condition fails ({maxima['cond_b']:.3e})")
    elif ix.tangent_mask.all():
        route = "tangent"
        chart = ix.chart
        dn = max(math.sqrt(max(inner(chart, pg.p, a - b, a - b), 0.0))
                 for pg, a, b in zip(ix.c1.geometry(), ix.N1, ix.N2))
        dH = max(abs(a.H - b.H) for a, b in zip(ix.c1.geometry(), ix.c2.geometry()))
        maxima["normal_gap"] = dn
        maxima["H_gap"] = dH
        if dn > pre_tol:
            reasons.append(f"normals differ along the tangency ({dn:.3e})")
        if dH > pre_tol:
            reasons.append(f"mean curvatures differ ({dH:.3e})")
    else:
        route = "mixed"
        reasons.append("curve is neither transversal nor tangent at every sample")
    if maxima["ar1"] <= pre_tol:
        given, other = "ar1", "ar2"
    elif maxima["ar2"] <= pre_tol:
        given, other = "ar2", "ar1"
    else:
        given = other = None
        reasons.append("curve is an AR line of curvature of neither surface")
    if reasons:
        return KeyLemmaReport(Verdict.Unmet, route, maxima, reasons, tracks)
    ok = maxima[other] <= post_tol
    if not ok:
        reasons.append(f"{other} = {maxima[other]:.3e} exceeds {post_tol:g} although {given} holds")
    return KeyLemmaReport(Verdict.Verified if ok else Verdict.Violated, route, maxima, reasons, tracks)


class Config(enum.Enum):
    Horizontal = "horizontal"
    VerticalBoth = "vertical on both"
    OppositeNuEqualH = "opposite angle functions, equal H"
    TangentSameNormal = "tangent with equal normals"
    TransversalOppositeNu = "transversal with opposite angle functions"


@dataclass
class ConfigReport:
    matched: set
    residuals: dict
    implied_ok: dict

    def as_dict(self):
        return {"matched": sorted(c.value for c in self.matched), "residuals": dict(self.residuals),
                "implied_ok": {k.value: v for k, v in self.implied_ok.items()}}


def corollary_config(ix: IntersectionData, tol: float = TRANSVERSAL_TOL, implied_tol: float = PRECONDITION_TOL) -> ConfigReport:
    """Detect the special intersection configurations that force the weighted
    product condition (or, for tangency, equality of the AR forms)."""
    chart = ix.chart
    tau = chart.params.tau
    g1, g2 = ix.c1.geometry(), ix.c2.geometry()
    res = {}
    matched = set()
    ang = intersection_angle(ix)
    res["d_spread"] = ang.spread
    nu1, nu2 = ix.nu()
    H1 = np.array([pg.H for pg in g1])
    H2 = np.array([pg.H for pg in g2])
    res["nu_sum"] = float(np.abs(nu1 + nu2).max())
    res["H_gap"] = float(np.abs(H1 - H2).max())
    v1 = vertical_residual(ix.c1).max()
    v2 = vertical_residual(ix.c2).max()
    res["vertical"] = float(max(v1, v2))
    transversal_const = ix.transversal and ang.is_constant
    if tau == 0.0:
        hz = horizontal_residual(ix.c1).max()
        res["horizontal"] = float(hz)
        if transversal_const and hz <= tol:
            matched.add(Config.Horizontal)
        if transversal_const and res["nu_sum"] <= tol and res["H_gap"] <= tol and np.abs(H1).min() > tol:
            matched.add(Config.OppositeNuEqualH)
    if transversal_const and res["vertical"] <= tol:
        matched.add(Config.VerticalBoth)
    if tau != 0.0:
        if ix.tangent_mask.all():
            dn = max(math.sqrt(max(inner(chart, pg.p, a - b, a - b), 0.0)) for pg, a, b in zip(g1, ix.N1, ix.N2))
            res["normal_gap"] = dn
            if dn <= tol and res["H_gap"] <= tol:
                matched.add(Config.TangentSameNormal)
        if transversal_const and res["nu_sum"] <= tol and res["H_gap"] <= tol:
            matched.add(Config.TransversalOppositeNu)
    implied = {}
    for cfg in matched:
        if cfg is Config.TangentSameNormal:
            a1 = ar_locus_residual(ix.c1).columns["signed"]
            a2 = ar_locus_residual(ix.c2).columns["signed"]
            implied[cfg] = bool(np.abs(a1 - a2).max() <= implied_tol)
        else:
            implied[cfg] = bool(key_lemma_condition_b(ix).max("residual") <= implied_tol)
    return ConfigReport(matched, res, implied)


# -- intersection tracing --------------------------------------------------------------------------


def trace_intersection(s1: Immersion, s2: Immersion, seed1, seed2, step: float, n: int, tol: float = 1e-10,
                       max_iter: int = 20):
    """Follow the intersection of two surfaces from matched seed parameters
    (predictor along the kernel of ``[dphi1, -dphi2]``, Gauss-Newton corrector).

    Returns two arrays of parameters, shape ``(n + 1, 2)``.
    """
    x = np.array([*seed1, *seed2], dtype=float)

    def F(x):
        return s1(x[0], x[1]) - s2(x[2], x[3])

    def Jac(x):
        return np.hstack([s1.jet(x[0], x[1])[1], -s2.jet(x[2], x[3])[1]])

    def correct(x):
        for _ in range(max_iter):
            r = F(x)
            if np.abs(r).max() <= tol:
                return x
            dx = np.linalg.lstsq(Jac(x), -r, rcond=None)[0]
            x = x + dx
        if np.abs(F(x)).max() > tol:
            raise RuntimeError(f"corrector failed to reach {tol:g}: residual {np.abs(F(x)).max():.3e}")
        return x

    x = correct(x)
    out = [x.copy()]
    prev = None
    for _ in range(n):
        t = np.linalg.svd(Jac(x))[2][-1]
        if prev is not None and t @ prev < 0:
            t = -t
        prev = t
        # step measured in the first surface's ambient speed
        sp = np.linalg.norm(s1.jet(x[0], x[1])[1] @ t[:2])
        x = correct(x + step * t / sp)
        out.append(x.copy())
    out = np.array(out)
    return out[:, :2], out[:, 2:]


# -- disk reports ---------------------------------------------------------------------------


@dataclass
class DiskBoundarySpec:
    arcs: Sequence[CurveOnSurface]
    vertex_angles: Sequence[float] = ()

    def __post_init__(self):
        for a in self.vertex_angles:
            if not 0.0 < a < 2 * math.pi:
                raise BoundarySpecError(f"vertex angle {a} outside (0, 2 pi)")

    def check_closed(self, tol: float = 1e-8) -> None:
        arcs = list(self.arcs)
        if not arcs:
            raise BoundarySpecError("no boundary arcs")
        chart = arcs[0].surface.chart
        for a, b in zip(arcs, arcs[1:] + arcs[:1]):
            end = a.surface(*[float(ad.value(c)) for c in a.uv(a.s[-1])])
            start = b.surface(*[float(ad.value(c)) for c in b.uv(b.s[0])])
            if _same_point(chart, end, start) > tol:
                raise BoundarySpecError("boundary arcs do not chain into a closed loop")


@dataclass
class Companion:
    """AR surface met along boundary arc ``arc`` (intersection data supplies both sides)."""

    arc: int
    ix: IntersectionData


@dataclass
class DiskReport:
    vertices_below_pi: int
    vertex_ok_le3: bool
    vertex_ok_lt3: bool
    arc_residuals: list
    arcs_are_ar_lines: bool
    H_spread: float
    minimal: bool
    contact: list
    QAR_max: float
    QAR_mean: float
    violated: list
    verdict: str

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


PREDICTION = "hypotheses satisfied => predicted: part of an Abresch-Rosenberg surface"


def disk_report(disk: Immersion, boundary: DiskBoundarySpec, interior: Sequence[tuple[float, float]],
                companions: Sequence[Companion] = (), strict_vertices: bool = False,
                tol: float = PRECONDITION_TOL) -> DiskReport:
    """Hypothesis bookkeeping for an H-disk with piecewise regular boundary, plus the
    measured size of the AR differential on ``interior`` samples."""
    boundary.check_closed()
    params = disk.chart.params
    nv = sum(1 for a in boundary.vertex_angles if a < math.pi)
    arc_res = [ar_locus_residual(a).max("residual") for a in boundary.arcs]
    arcs_ok = all(r <= tol for r in arc_res)
    pgs = [point_geometry(disk, u, v) for u, v in interior]
    Hs = np.array([pg.H for pg in pgs])
    norms = np.array([ar_from_geometry(pg, params).invariant_norm for pg in pgs])
    minimal = bool(np.abs(Hs).max() <= tol)
    violated = []
    if (strict_vertices and nv >= 3) or (not strict_vertices and nv > 3):
        violated.append(f"{nv} vertices with angle < pi")
    if float(np.ptp(Hs)) > tol:
        violated.append("mean curvature not constant on the disk")
    if not arcs_ok:
        worst = int(np.argmax(arc_res))
        violated.append(f"boundary arc {worst} is not an AR line of curvature (residual {arc_res[worst]:.3e})")
    contact = []
    for comp in companions:
        cfg = corollary_config(comp.ix)
        entry = {"arc": comp.arc, "transversal": comp.ix.transversal,
                 "constant_angle": intersection_angle(comp.ix).is_constant,
                 "configurations": sorted(c.value for c in cfg.matched)}
        contact.append(entry)
        if not cfg.matched:
            violated.append(f"contact along arc {comp.arc} matches none of the transporting configurations")
        if params.tau == 0.0 and minimal and comp.ix.transversal:
            violated.append("disk is minimal; the transversal-contact classification needs H != 0")
    verdict = PREDICTION if not violated else "hypotheses violated: " + "; ".join(violated)
    return DiskReport(nv, nv <= 3, nv < 3, arc_res, arcs_ok, float(np.ptp(Hs)), minimal, contact,
                      float(norms.max()), float(norms.mean()), violated, verdict)


def boundary_from(arcs: Sequence[CurveOnSurface], vertex_angles: Sequence[float] = ()) -> DiskBoundarySpec:
    return DiskBoundarySpec(list(arcs), list(vertex_angles))


def curve_copy(c: CurveOnSurface, **kw) -> CurveOnSurface:
    return replace(c, _cache={}, **kw)

