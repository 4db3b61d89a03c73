"""Immersed surfaces: fundamental forms, normal, curvatures and the vertical split.

Conventions
-----------
* ``dz = du + i dv`` and ``d/dz = (d/du - i d/dv) / 2``.
* The unit normal makes ``(phi_u, phi_v, N)`` positively oriented, multiplied by
  the immersion's ``orientation`` (+1 or -1).
* ``II(X, Y) = <A X, Y>`` with ``A = -nabla N``, evaluated as ``<N, nabla_X Y>``.
* In conformal coordinates ``I = 2 lam |dz|^2`` so ``lam = E / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import autodiff
from .ambient import (
    AmbientChart,
    ChartKind,
    DomainError,
    christoffels_at,
    cross,
    hyperboloid_defect,
    metric_at,
    vertical_field,
)


class RankError(ValueError):
    """Immersion degenerates (phi_u, phi_v dependent) at the queried point."""


class UnsupportedCoordinatesError(ValueError):
    """Operation needs conformal (isothermal) parameters."""


ISOTHERMAL_TOL = 1e-8

Jet = tuple[np.ndarray, np.ndarray, np.ndarray]


class Immersion:
    """A twice-differentiable map from a planar parameter domain into a chart.

    Subclasses implement :meth:`jet`, returning the point, the first derivatives
    (shape ``(n, 2)``) and the second derivatives (shape ``(n, 2, 2)``).
    """

    chart: AmbientChart
    orientation: int = 1
    rank_tol: float = 1e-8
    name: str = "immersion"

    def jet(self, u: float, v: float) -> Jet:
        raise NotImplementedError

    def __call__(self, u: float, v: float) -> np.ndarray:
        return self.jet(u, v)[0]

    def in_domain(self, u: float, v: float) -> bool:
        return True

    def flipped(self) -> "Immersion":
        return _Flipped(self)


class _Flipped(Immersion):
    def __init__(self, base: Immersion):
        self.base = base
        self.chart = base.chart
        self.orientation = -base.orientation
        self.rank_tol = base.rank_tol
        self.name = base.name

    def jet(self, u, v):
        return self.base.jet(u, v)

    def in_domain(self, u, v):
        return self.base.in_domain(u, v)


class ExprImmersion(Immersion):
    """Immersion given by a closed-form map written with :mod:`ektau.autodiff`.

    ``derivatives`` selects the derivative supply:

    ``"hyperdual"``  exact first and second derivatives (default);
    ``"dual"``       dual numbers for the first derivatives, central differences
                     of those for the second (step ``fd_step`` relative);
    ``"fd"``         central differences throughout.
    """

    def __init__(
        self,
        chart: AmbientChart,
        fn: Callable[[object, object], Sequence],
        name: str = "expr",
        orientation: int = 1,
        domain: Callable[[float, float], bool] | None = None,
        derivatives: str = "hyperdual",
        fd_step: float = 1e-5,
    ):
        if derivatives not in ("hyperdual", "dual", "fd"):
            raise ValueError(f"unknown derivative supply {derivatives!r}")
        self.chart = chart
        self.fn = fn
        self.name = name
        self.orientation = orientation
        self.domain = domain
        self.derivatives = derivatives
        self.fd_step = fd_step

    def in_domain(self, u, v):
        return True if self.domain is None else bool(self.domain(u, v))

    def _value(self, u, v):
        return np.array([autodiff.value(c) for c in self.fn(u, v)], dtype=float)

    def jet(self, u, v):
        if not self.in_domain(u, v):
            raise DomainError(f"({u}, {v}) outside the parameter domain of {self.name}")
        if self.derivatives == "hyperdual":
            return autodiff.jet2(self.fn, u, v)
        hu = self.fd_step * max(1.0, abs(u))
        hv = self.fd_step * max(1.0, abs(v))
        if self.derivatives == "dual":
            p, d1 = autodiff.jet1(self.fn, u, v)
            du = (autodiff.jet1(self.fn, u + hu, v)[1] - autodiff.jet1(self.fn, u - hu, v)[1]) / (2 * hu)
            dv = (autodiff.jet1(self.fn, u, v + hv)[1] - autodiff.jet1(self.fn, u, v - hv)[1]) / (2 * hv)
        else:
            f = self._value
            p = f(u, v)
            d1 = np.stack([(f(u + hu, v) - f(u - hu, v)) / (2 * hu), (f(u, v + hv) - f(u, v - hv)) / (2 * hv)], axis=1)
            fuu = (f(u + hu, v) - 2 * p + f(u - hu, v)) / hu**2
            fvv = (f(u, v + hv) - 2 * p + f(u, v - hv)) / hv**2
            fuv = (f(u + hu, v + hv) - f(u + hu, v - hv) - f(u - hu, v + hv) + f(u - hu, v - hv)) / (4 * hu * hv)
            d2 = np.empty((p.size, 2, 2))
            d2[:, 0, 0], d2[:, 1, 1] = fuu, fvv
            d2[:, 0, 1] = d2[:, 1, 0] = fuv
            return p, d1, d2
        d2 = np.stack([du, dv], axis=2)
        d2 = 0.5 * (d2 + np.transpose(d2, (0, 2, 1)))
        return p, d1, d2


class JetImmersion(Immersion):
    """Immersion whose jets come from a user callable ``jet_fn(u, v) -> (p, d1, d2)``
    (used for ODE-generated surfaces)."""

    def __init__(self, chart: AmbientChart, jet_fn, name="jet", orientation=1, domain=None):
        self.chart = chart
        self.jet_fn = jet_fn
        self.name = name
        self.orientation = orientation
        self.domain = domain

    def in_domain(self, u, v):
        return True if self.domain is None else bool(self.domain(u, v))

    def jet(self, u, v):
        if not self.in_domain(u, v):
            raise DomainError(f"({u}, {v}) outside the parameter domain of {self.name}")
        p, d1, d2 = self.jet_fn(u, v)
        return np.asarray(p, float), np.asarray(d1, float), np.asarray(d2, float)


class ConformalReparam(Immersion):
    """``base(f(zeta))`` for a holomorphic ``f`` with derivatives ``f1, f2``.

    Used for reparametrisation-invariance checks (``f(z) = a z``) and to move a
    surface into coordinates where its Hopf-type differentials vary.
    """

    def __init__(self, base: Immersion, f, f1, f2, name=None):
        self.base = base
        self.chart = base.chart
        self.orientation = base.orientation
        self.f, self.f1, self.f2 = f, f1, f2
        self.name = name or f"{base.name}@reparam"
        self.rank_tol = base.rank_tol

    def in_domain(self, a, b):
        z = self.f(complex(a, b))
        return self.base.in_domain(z.real, z.imag)

    def jet(self, a, b):
        zeta = complex(a, b)
        z = self.f(zeta)
        d = self.f1(zeta)
        dd = self.f2(zeta)
        p, g1, g2 = self.base.jet(z.real, z.imag)
        # Jacobian of (s, y) = (Re f, Im f) with respect to (a, b)
        Jm = np.array([[d.real, -d.imag], [d.imag, d.real]])
        # second derivatives of (s, y): d^2 f/da^2 = f'', d^2/dadb = i f'', d^2/db^2 = -f''
        H = np.empty((2, 2, 2))
        H[:, 0, 0] = [dd.real, dd.imag]
        H[:, 0, 1] = H[:, 1, 0] = [(1j * dd).real, (1j * dd).imag]
        H[:, 1, 1] = [(-dd).real, (-dd).imag]
        d1 = g1 @ Jm
        d2 = np.einsum("nij,ia,jb->nab", g2, Jm, Jm) + np.einsum("ni,iab->nab", g1, H)
        return p, d1, d2


def scaled(base: Immersion, a: complex) -> ConformalReparam:
    """``zeta -> base(a * zeta)``."""
    return ConformalReparam(base, lambda z: a * z, lambda z: a + 0j, lambda z: 0j, name=f"{base.name}@{a}")


# -- per-point geometry ----------------------------------------------------------


@dataclass
class PointGeometry:
    u: float
    v: float
    p: np.ndarray
    dphi: np.ndarray  # (n, 2)
    I: np.ndarray
    II: np.ndarray
    N: np.ndarray
    H: float
    K_e: float
    nu: float
    T: np.ndarray  # ambient components
    T_coords: np.ndarray  # components in the (d_u, d_v) frame
    xi: np.ndarray
    isothermal_defect: float
    extra: dict = field(default_factory=dict)

    @property
    def lam(self) -> float:
        """Conformal factor with ``I = 2 lam |dz|^2`` (meaningful when isothermal)."""
        return 0.25 * (self.I[0, 0] + self.I[1, 1])

    @property
    def shape_operator(self) -> np.ndarray:
        return np.linalg.solve(self.I, self.II)

    @property
    def Q(self) -> complex:
        """Hopf coefficient ``II(d_z, d_z)``."""
        L, M, N = self.II[0, 0], self.II[0, 1], self.II[1, 1]
        return 0.25 * (L - N) - 0.5j * M

    @property
    def t(self) -> complex:
        """``<T, d_z>``."""
        a, b = self.I @ self.T_coords
        return 0.5 * (a - 1j * b)

    @property
    def J(self) -> np.ndarray:
        """Rotation by +pi/2 in the (d_u, d_v) frame with respect to ``I``."""
        E, F, G = self.I[0, 0], self.I[0, 1], self.I[1, 1]
        s = self.orientation_sign / math.sqrt(E * G - F * F)
        return s * np.array([[-F, -G], [E, F]])

    @property
    def orientation_sign(self) -> int:
        return self.extra.get("orientation", 1)

    def ambient(self, X2) -> np.ndarray:
        """Push a parameter vector forward to the ambient chart."""
        return self.dphi @ np.asarray(X2)


def point_geometry(imm: Immersion, u: float, v: float) -> PointGeometry:
    chart = imm.chart
    p, d1, d2 = imm.jet(u, v)
    if chart.kind is ChartKind.HyperboloidProduct and abs(hyperboloid_defect(p)) > 1e-10:
        raise DomainError(f"{imm.name} leaves the hyperboloid at ({u}, {v}): defect {hyperboloid_defect(p):.3e}")
    g = metric_at(chart, p)
    pu, pv = d1[:, 0], d1[:, 1]
    I = d1.T @ g @ d1
    n_raw = cross(chart, p, pu, pv)
    nn = float(n_raw @ g @ n_raw)
    if nn <= 0 or math.sqrt(nn) < imm.rank_tol:
        raise RankError(f"{imm.name} is not an immersion at ({u}, {v})")
    N = imm.orientation * n_raw / math.sqrt(nn)
    G = christoffels_at(chart, p)
    cov = d2 + np.einsum("kij,ia,jb->kab", G, d1, d1)
    II = np.einsum("k,kl,lab->ab", N, g, cov)
    II = 0.5 * (II + II.T)
    Sop = np.linalg.solve(I, II)
    xi = vertical_field(chart, p)
    nu = float(N @ g @ xi)
    T = xi - nu * N
    T_coords = np.linalg.solve(I, d1.T @ g @ T)
    E, F, Gm = I[0, 0], I[0, 1], I[1, 1]
    iso = max(abs(E - Gm), abs(F)) / (E + Gm)
    return PointGeometry(
        u=u, v=v, p=p, dphi=d1, I=I, II=II, N=N,
        H=0.5 * float(np.trace(Sop)), K_e=float(np.linalg.det(Sop)),
        nu=nu, T=T, T_coords=T_coords, xi=xi, isothermal_defect=iso,
        extra={"orientation": imm.orientation, "christoffel": G, "metric": g},
    )


def require_isothermal(pg: PointGeometry, tol: float = ISOTHERMAL_TOL) -> None:
    if pg.isothermal_defect > tol:
        raise UnsupportedCoordinatesError(
            f"parameters not isothermal at ({pg.u}, {pg.v}): defect {pg.isothermal_defect:.3e}"
        )


def hopf_Q(imm: Immersion, u: float, v: float) -> complex:
    pg = point_geometry(imm, u, v)
    require_isothermal(pg)
    return pg.Q


def vertical_t(imm: Immersion, u: float, v: float) -> complex:
    pg = point_geometry(imm, u, v)
    require_isothermal(pg)
    return pg.t


@dataclass
class IsothermalReport:
    max_EG: float
    max_F: float
    isothermal: bool
    tol: float

    def as_dict(self):
        return {"max_EG": self.max_EG, "max_F": self.max_F, "isothermal": self.isothermal, "tol": self.tol}


def isothermal_check(imm: Immersion, points: Sequence[tuple[float, float]], tol: float = ISOTHERMAL_TOL) -> IsothermalReport:
    """Max of ``|E - G| / (E + G)`` and ``|F| / (E + G)`` over ``points``."""
    meg = mf = 0.0
    for u, v in points:
        p, d1, _ = imm.jet(u, v)
        I = d1.T @ metric_at(imm.chart, p) @ d1
        s = I[0, 0] + I[1, 1]
        meg = max(meg, abs(I[0, 0] - I[1, 1]) / s)
        mf = max(mf, abs(I[0, 1]) / s)
    return IsothermalReport(meg, mf, meg <= tol and mf <= tol, tol)


def _laplacian_log_lam(imm: Immersion, u: float, v: float, h: float, order: int) -> tuple[float, float]:
    def loglam(a, b):
        p, d1, _ = imm.jet(a, b)
        I = d1.T @ metric_at(imm.chart, p) @ d1
        return math.log(0.25 * (I[0, 0] + I[1, 1]))

    c = loglam(u, v)
    if order == 2:
        lap = (loglam(u + h, v) + loglam(u - h, v) + loglam(u, v + h) + loglam(u, v - h) - 4 * c) / h**2
    else:
        w = (-1 / 12, 4 / 3, -5 / 2, 4 / 3, -1 / 12)
        su = sum(wi * loglam(u + k * h, v) for wi, k in zip(w, range(-2, 3)))
        sv = sum(wi * loglam(u, v + k * h) for wi, k in zip(w, range(-2, 3)))
        lap = (su + sv) / h**2
    return lap, math.exp(c)


def gauss_curvature(imm: Immersion, u: float, v: float, h: float = 1e-3, order: int = 4) -> float:
    """Intrinsic Gauss curvature ``-Laplacian(log lam) / (4 lam)`` from the conformal factor."""
    pg = point_geometry(imm, u, v)
    require_isothermal(pg)
    lap, lam = _laplacian_log_lam(imm, u, v, h, order)
    return -lap / (4.0 * lam)


def gauss_rhs(pg: PointGeometry, kappa: float, tau: float) -> float:
    return pg.K_e + tau**2 + (kappa - 4 * tau**2) * pg.nu**2


def gauss_equation_residual(imm: Immersion, u: float, v: float, h: float = 1e-3, order: int = 4) -> float:
    pg = point_geometry(imm, u, v)
    k, t = imm.chart.params.kappa, imm.chart.params.tau
    return abs(gauss_curvature(imm, u, v, h, order) - gauss_rhs(pg, k, t))
