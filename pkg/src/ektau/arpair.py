"""Abresch-Rosenberg shape operator, its Codazzi pair and holomorphic differential.

Conventions follow :mod:`ektau.surface`.  The tangential rotation is ``J X = N ^ X``;
in parameters where ``(phi_u, phi_v, N)`` is positively oriented, ``J d_u = d_v``
up to the conformal factor.

Phase branch
------------
For ``tau != 0`` the operator uses the rotated vertical part ``T_theta = cos(theta) T
+ sin(theta) J T``.  With our orientation conventions the pair ``(I, II_AR)`` is a
Codazzi pair exactly when ``exp(2 i theta) = (H + i tau) / sqrt(H^2 + tau^2)``; this
is the default (``convention="codazzi"``).  The conjugate phase is available as
``convention="conjugate"`` and demonstrably breaks the Codazzi property for
``tau != 0`` (see the tests).  ``theta`` is the principal half-angle in
``(-pi/2, pi/2]``; since ``T_theta`` enters quadratically only ``exp(2 i theta)``
matters.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .ambient import SpaceParams
from .grid import ResidualReport, SurfaceGrid, d_z, d_zbar, interior_report
from .surface import (
    ISOTHERMAL_TOL,
    Immersion,
    PointGeometry,
    UnsupportedCoordinatesError,
    point_geometry,
)

CONVENTIONS = ("codazzi", "conjugate")


def ar_phase(H: float, tau: float, convention: str = "codazzi") -> float:
    """Principal half-angle ``theta`` in ``(-pi/2, pi/2]`` of the rotation phase."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown phase convention {convention!r}")
    s = tau if convention == "codazzi" else -tau
    if H == 0.0 and s == 0.0:
        return 0.0
    th = 0.5 * math.atan2(s, H)
    return th if th > -math.pi / 2 else th + math.pi


@dataclass
class ARData:
    S_AR: np.ndarray
    II_AR: np.ndarray
    H: float
    tau: float
    kmt: float
    alpha: float | None
    theta: float | None
    T_theta: np.ndarray | None
    selfadjoint_defect: float
    Q_AR: complex | None = None
    pair_hopf: complex | None = None
    lam: float | None = None

    @property
    def trace(self) -> float:
        return float(np.trace(self.S_AR))

    @property
    def invariant_norm(self) -> float:
        """``|Q^AR dz^2|`` measured with the induced metric: ``|Q^AR| / (2 lam)`` in any
        conformal parameter, computed here from the eigenvalues of ``S_AR`` so it is
        available in arbitrary parameters."""
        mu = math.sqrt(max(-float(np.linalg.det(self.S_AR)), 0.0))
        if self.tau == 0.0:
            return 0.5 * mu
        return math.hypot(self.H, self.tau) * mu

    def form(self, X, Y) -> float:
        return float(np.asarray(X) @ self.II_AR @ np.asarray(Y))


def _conformal_ok(pg: PointGeometry, tau: float) -> bool:
    if pg.isothermal_defect > ISOTHERMAL_TOL:
        return False
    # with the opposite orientation z = u + iv is anti-conformal for J; the tau-terms
    # would then be conjugated
    return not (tau != 0.0 and pg.orientation_sign < 0)


def ar_from_geometry(pg: PointGeometry, params: SpaceParams, convention: str = "codazzi") -> ARData:
    k, tau, kmt = params.kappa, params.tau, params.kmt
    H = pg.H
    I = pg.I
    A = pg.shape_operator
    Tc = pg.T_coords
    T2 = float(Tc @ I @ Tc)
    Id = np.eye(2)
    if tau == 0.0:
        S = 2 * H * A - k * np.outer(Tc, I @ Tc) + 0.5 * k * T2 * Id - 2 * H * H * Id
        alpha = theta = Tth = None
    else:
        theta = ar_phase(H, tau, convention)
        alpha = kmt / (2.0 * math.hypot(H, tau))
        Tth = math.cos(theta) * Tc + math.sin(theta) * (pg.J @ Tc)
        S = A - alpha * np.outer(Tth, I @ Tth) + 0.5 * alpha * T2 * Id - H * Id
    II_AR = I @ S
    defect = float(np.abs(II_AR - II_AR.T).max())
    II_AR = 0.5 * (II_AR + II_AR.T)
    data = ARData(S, II_AR, H, tau, kmt, alpha, theta, Tth, defect)
    if _conformal_ok(pg, tau):
        data.lam = pg.lam
        data.Q_AR = 2 * (H + 1j * tau) * pg.Q - kmt * pg.t**2
        L, M, N = II_AR[0, 0], II_AR[0, 1], II_AR[1, 1]
        data.pair_hopf = 0.25 * (L - N) - 0.5j * M
    return data


def ar_operator(imm: Immersion, u: float, v: float, convention: str = "codazzi") -> ARData:
    return ar_from_geometry(point_geometry(imm, u, v), imm.chart.params, convention)


def _require(data: ARData, what: str):
    if data.Q_AR is None:
        raise UnsupportedCoordinatesError(f"{what} needs conformal parameters compatible with the orientation")


def ar_differential(imm: Immersion, u: float, v: float) -> complex:
    """``Q^AR = 2 (H + i tau) Q - (kappa - 4 tau^2) t^2`` at a conformal point."""
    d = ar_operator(imm, u, v)
    _require(d, "the AR differential")
    return d.Q_AR


def pair_hopf(imm: Immersion, u: float, v: float, convention: str = "codazzi") -> complex:
    """(2,0)-part ``II_AR(d_z, d_z)`` of the AR pair."""
    d = ar_operator(imm, u, v, convention)
    _require(d, "the pair Hopf coefficient")
    return d.pair_hopf


def ar_norm(imm: Immersion, u: float, v: float) -> float:
    """Parametrisation-free size of the AR differential (see :attr:`ARData.invariant_norm`)."""
    return ar_operator(imm, u, v).invariant_norm


# -- fundamental pairs on lattices ---------------------------------------------------------


@dataclass
class FundamentalPair:
    """Abstract pair of quadratic forms sampled on a uniform lattice (conformal ``I``)."""

    us: np.ndarray
    vs: np.ndarray
    h: float
    I: np.ndarray  # (nu, nv, 2, 2)
    II: np.ndarray  # (nu, nv, 2, 2)
    name: str = "pair"

    def __post_init__(self):
        ev = np.linalg.eigvalsh(self.I)
        if not (ev > 0).all():
            raise ValueError("first form must be positive definite at every node")

    @property
    def lam(self) -> np.ndarray:
        return 0.25 * (self.I[..., 0, 0] + self.I[..., 1, 1])

    @property
    def H(self) -> np.ndarray:
        return 0.5 * np.trace(np.linalg.solve(self.I, self.II), axis1=-2, axis2=-1)

    @property
    def Q(self) -> np.ndarray:
        L, M, N = self.II[..., 0, 0], self.II[..., 0, 1], self.II[..., 1, 1]
        return 0.25 * (L - N) - 0.5j * M

    def isothermal_defect(self) -> float:
        E, F, G = self.I[..., 0, 0], self.I[..., 0, 1], self.I[..., 1, 1]
        return float((np.maximum(np.abs(E - G), np.abs(F)) / (E + G)).max())

    def scaled(self, f: np.ndarray, name: str | None = None) -> "FundamentalPair":
        return FundamentalPair(self.us, self.vs, self.h, self.I, self.II * f[..., None, None], name or f"{self.name}*f")

    @classmethod
    def from_grid(cls, grid: SurfaceGrid, which: str = "ar", convention: str = "codazzi") -> "FundamentalPair":
        """``which="ar"`` gives ``(I, II_AR)``, ``which="second"`` gives ``(I, II)``."""
        params = grid.immersion.chart.params
        if which == "ar":
            II = grid.field(lambda pg: ar_from_geometry(pg, params, convention).II_AR)
        elif which == "second":
            II = grid.field(lambda pg: pg.II)
        else:
            raise ValueError(which)
        I = grid.field(lambda pg: pg.I)
        return cls(grid.us, grid.vs, grid.h, I, II, f"{grid.immersion.name}:{which}")

    @classmethod
    def synthetic(cls, us, vs, lam_fn, H_fn, Q_fn, name="synthetic") -> "FundamentalPair":
        """Pair with ``I = 2 lam |dz|^2``, mean curvature ``H`` and Hopf coefficient ``Q``
        prescribed as functions of ``z = u + i v``."""
        us, vs = np.asarray(us, float), np.asarray(vs, float)
        Z = us[:, None] + 1j * vs[None, :]
        lam, H, Q = lam_fn(Z), H_fn(Z), Q_fn(Z)
        lam = np.broadcast_to(np.asarray(lam, float), Z.shape)
        H = np.broadcast_to(np.asarray(H, float), Z.shape)
        Q = np.broadcast_to(np.asarray(Q, complex), Z.shape)
        I = np.zeros(Z.shape + (2, 2))
        I[..., 0, 0] = I[..., 1, 1] = 2 * lam
        II = np.empty(Z.shape + (2, 2))
        II[..., 0, 0] = 2 * lam * H + 2 * Q.real
        II[..., 1, 1] = 2 * lam * H - 2 * Q.real
        II[..., 0, 1] = II[..., 1, 0] = -2 * Q.imag
        return cls(us, vs, float(us[1] - us[0]), I, II, name)


def _pair_report(pair: FundamentalPair, name: str, cols: dict, order: int, **kw) -> ResidualReport:
    m = order // 2
    sl = (slice(m, len(pair.us) - m), slice(m, len(pair.vs) - m))
    return ResidualReport(name, pair.us[sl[0]], pair.vs[sl[1]], {k: np.asarray(v)[sl] for k, v in cols.items()},
                          meta={"order": order, "h": pair.h}, **kw)


def codazzi_residual(pair: FundamentalPair, order: int = 2, tol: float | None = None) -> ResidualReport:
    """``|d_zbar Q(I, II) - lam d_z H(I, II)|`` at interior nodes."""
    if pair.isothermal_defect() > ISOTHERMAL_TOL:
        raise UnsupportedCoordinatesError("Codazzi criterion needs a conformal first form")
    h = pair.h
    res = np.abs(d_zbar(pair.Q, h, order) - pair.lam * d_z(pair.H, h, order))
    return _pair_report(pair, "codazzi", {"codazzi": res}, order, tol=tol)


def holomorphy_residual(grid: SurfaceGrid, order: int = 2, tol: float | None = None) -> ResidualReport:
    """``|d_zbar Q^AR|`` by central differences at interior nodes.

    Column ``holomorphy`` differentiates the factors of ``Q^AR`` (product rule:
    ``2 H_zbar Q + 2 (H + i tau) Q_zbar - 2 (kappa - 4 tau^2) t t_zbar``), which
    keeps the genuine truncation error visible even where ``Q^AR`` vanishes
    identically.  Column ``direct`` differences the sampled ``Q^AR`` itself.
    """
    grid.require_isothermal()
    warnings = [] if grid.check_cmc() else ["mean curvature not constant on grid"]
    p = grid.immersion.chart.params
    if p.tau != 0.0 and grid.field(lambda pg: pg.orientation_sign).min() < 0:
        raise UnsupportedCoordinatesError("parameters are anti-conformal for the chosen orientation")
    h = grid.h
    Q = grid.field(lambda pg: pg.Q)
    t = grid.field(lambda pg: pg.t)
    H = grid.field(lambda pg: pg.H)
    QAR = 2 * (H + 1j * p.tau) * Q - p.kmt * t**2
    prod = 2 * d_zbar(H, h, order) * Q + 2 * (H + 1j * p.tau) * d_zbar(Q, h, order) - 2 * p.kmt * t * d_zbar(t, h, order)
    cols = {"holomorphy": np.abs(prod), "direct": np.abs(d_zbar(QAR, h, order)), "QAR_abs": np.abs(QAR)}
    return interior_report(grid, "holomorphy", cols, order // 2, tol=tol, warnings=warnings,
                           meta={"order": order, "h": h})


# -- Milnor trichotomy ----------------------------------------------------------------


MILNOR_TOL = 1e-5


@dataclass
class MilnorReport:
    codazzi: bool
    H_const: bool
    Q_holo: bool
    residuals: dict
    violations: list = field(default_factory=list)

    @property
    def flags(self) -> dict:
        return {"codazzi": self.codazzi, "H_const": self.H_const, "Q_holo": self.Q_holo}

    def as_dict(self) -> dict:
        return {**self.flags, "residuals": dict(self.residuals), "violations": list(self.violations)}


def milnor_check(pair: FundamentalPair, order: int = 2, tol: float = MILNOR_TOL) -> MilnorReport:
    """Evaluate Codazzi / constant-H / holomorphic-Q flags and check that any two imply the third."""
    h = pair.h
    m = order // 2
    inner = (slice(m, len(pair.us) - m), slice(m, len(pair.vs) - m))
    r_cod = codazzi_residual(pair, order).max("codazzi")
    r_H = float(np.abs(d_z(pair.H, h, order)[inner]).max())
    r_Q = float(np.abs(d_zbar(pair.Q, h, order)[inner]).max())
    flags = {"codazzi": r_cod <= tol, "H_const": r_H <= tol, "Q_holo": r_Q <= tol}
    violations = []
    names = list(flags)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            (c,) = [n for n in names if n not in (a, b)]
            if flags[a] and flags[b] and not flags[c]:
                violations.append(f"{a} and {b} hold but {c} fails")
    return MilnorReport(flags["codazzi"], flags["H_const"], flags["Q_holo"],
                        {"codazzi": r_cod, "H_const": r_H, "Q_holo": r_Q}, violations)


# -- classification of AR surfaces ---------------------------------------------------------


class ARVerdict(enum.Enum):
    Slice = "slice"
    RotSphere = "rotational sphere"
    FlatVertical = "flat vertical surface"
    SomewhereNegativeK = "somewhere negative Gauss curvature"


def classify_ar(params: SpaceParams, H: float, nu_zero: bool = False, tol: float = 1e-12) -> tuple[ARVerdict, str]:
    """Type of a complete H-surface with vanishing AR differential, from ``(kappa, tau, H)``.

    The sphere branch uses ``4 (H^2 + tau^2) > |kappa - 4 tau^2|``.
    """
    k, tau, kmt = params.kappa, params.tau, params.kmt
    if abs(H) <= tol and abs(tau) <= tol:
        return ARVerdict.Slice, "H = tau = 0"
    s = 4 * (H * H + tau * tau)
    if s > abs(kmt) + tol:
        return ARVerdict.RotSphere, f"4(H^2+tau^2) = {s:.6g} > |kappa-4tau^2| = {abs(kmt):.6g}; 4H^2+kappa = {4 * H * H + k:.6g} > 0"
    if abs(4 * H * H + k) <= 1e-9 and nu_zero:
        return ARVerdict.FlatVertical, "4H^2 + kappa = 0 and nu = 0"
    return ARVerdict.SomewhereNegativeK, "none of the positive or flat branches applies"
