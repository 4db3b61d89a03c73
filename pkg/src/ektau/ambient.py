"""Coordinate models of the homogeneous spaces E(kappa, tau).

Three charts are provided:

``CartanEktau``
    ``ds^2 = lam^2 (dx^2 + dy^2) + (tau*lam*(y dx - x dy) + dz)^2`` with
    ``lam = 1 / (1 + kappa (x^2 + y^2) / 4)``; covers every (kappa, tau).
``PolarProduct``
    ``M^2(kappa) x R`` in geodesic polar coordinates ``(rho, phi, t)``,
    ``ds^2 = d rho^2 + sn(rho)^2 d phi^2 + dt^2``; tau must vanish.
``HyperboloidProduct``
    ``H^2 x R`` inside R^4 with the form ``diag(-1, 1, 1, 1)`` and the
    constraint ``-x0^2 + x1^2 + x2^2 = -1, x0 > 0``.

The vertical Killing field is ``d/dz`` (resp. the R factor).  Orientation is
fixed by declaring the coordinate frame positive; for the hyperboloid chart the
frame ``(p, X, Y, Z)`` is positive in R^4 where ``p`` is the base point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np


class DomainError(ValueError):
    """Point outside the coordinate domain of a chart."""


class ParameterError(ValueError):
    """Inadmissible space or surface parameters."""


@dataclass(frozen=True)
class SpaceParams:
    kappa: float
    tau: float
    validation_mode: str = "strict"

    def __post_init__(self):
        if self.validation_mode not in ("strict", "permissive"):
            raise ParameterError(f"unknown validation mode {self.validation_mode!r}")
        if self.validation_mode == "strict":
            if self.kappa not in (-1, 0, 1):
                raise ParameterError(f"kappa must be -1, 0 or 1 in strict mode, got {self.kappa}")
            if self.kappa - 4 * self.tau**2 == 0:
                raise ParameterError("kappa - 4 tau^2 must be nonzero")

    @property
    def kmt(self) -> float:
        """The bundle constant ``kappa - 4 tau^2``."""
        return self.kappa - 4.0 * self.tau**2

    @property
    def is_product(self) -> bool:
        return self.tau == 0

    @property
    def name(self) -> str:
        k, t = self.kappa, self.tau
        if t == 0:
            return {1: "S2xR", -1: "H2xR", 0: "R3"}.get(k, f"M2({k})xR")
        return {1: "Berger", 0: "Nil3", -1: "PSL2R"}.get(k, f"E({k},{t})")


class ChartKind(enum.Enum):
    CartanEktau = "cartan"
    PolarProduct = "polar"
    HyperboloidProduct = "hyperboloid"


_LORENTZ = np.diag([-1.0, 1.0, 1.0, 1.0])


def _sn(kappa: float, r):
    if kappa > 0:
        return np.sin(math.sqrt(kappa) * r) / math.sqrt(kappa)
    if kappa < 0:
        return np.sinh(math.sqrt(-kappa) * r) / math.sqrt(-kappa)
    return r


def _cn(kappa: float, r):
    if kappa > 0:
        return np.cos(math.sqrt(kappa) * r)
    if kappa < 0:
        return np.cosh(math.sqrt(-kappa) * r)
    return 1.0 + 0.0 * r


@dataclass(frozen=True)
class AmbientChart:
    params: SpaceParams
    kind: ChartKind = ChartKind.CartanEktau
    constraint_tol: float = 1e-8

    def __post_init__(self):
        if self.kind is not ChartKind.CartanEktau and self.params.tau != 0:
            raise ParameterError(f"{self.kind.name} chart requires tau = 0")
        if self.kind is ChartKind.HyperboloidProduct and self.params.kappa != -1:
            raise ParameterError("HyperboloidProduct chart models H^2 x R (kappa = -1)")

    @property
    def dim(self) -> int:
        return 4 if self.kind is ChartKind.HyperboloidProduct else 3

    # -- domain --------------------------------------------------------------
    def in_domain(self, p) -> bool:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.dim,) or not np.all(np.isfinite(p)):
            return False
        k = self.params.kappa
        if self.kind is ChartKind.CartanEktau:
            return 1.0 + k * (p[0] ** 2 + p[1] ** 2) / 4.0 > 0.0
        if self.kind is ChartKind.PolarProduct:
            if p[0] <= 0.0:
                return False
            return not (k > 0 and p[0] >= math.pi / math.sqrt(k))
        return p[0] > 0.0 and abs(hyperboloid_defect(p)) <= self.constraint_tol

    def check(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if not self.in_domain(p):
            raise DomainError(f"point {p} outside {self.kind.name} domain for {self.params}")
        return p

    def tangent_defect(self, p, X) -> float:
        """Violation of constraint tangency (zero for the 3-dimensional charts)."""
        if self.kind is not ChartKind.HyperboloidProduct:
            return 0.0
        return float(-p[0] * X[0] + p[1] * X[1] + p[2] * X[2])


def hyperboloid_defect(p) -> float:
    return float(-p[0] ** 2 + p[1] ** 2 + p[2] ** 2 + 1.0)


def cartan(kappa: float, tau: float, validation_mode: str = "strict") -> AmbientChart:
    return AmbientChart(SpaceParams(kappa, tau, validation_mode), ChartKind.CartanEktau)


def polar(kappa: float, validation_mode: str = "strict") -> AmbientChart:
    return AmbientChart(SpaceParams(kappa, 0.0, validation_mode), ChartKind.PolarProduct)


def hyperboloid() -> AmbientChart:
    return AmbientChart(SpaceParams(-1, 0.0), ChartKind.HyperboloidProduct)


# -- metric and its first derivatives -------------------------------------------


def _cartan_metric_and_derivs(kappa: float, tau: float, p):
    x, y, _ = p
    lam = 1.0 / (1.0 + kappa * (x * x + y * y) / 4.0)
    lx = -0.5 * kappa * x * lam * lam
    ly = -0.5 * kappa * y * lam * lam
    # connection 1-form  a dx + b dy + dz
    a = tau * lam * y
    b = -tau * lam * x
    ax, ay = tau * lx * y, tau * (ly * y + lam)
    bx, by = -tau * (lx * x + lam), -tau * ly * x
    g = np.array(
        [
            [lam * lam + a * a, a * b, a],
            [a * b, lam * lam + b * b, b],
            [a, b, 1.0],
        ]
    )
    dg = np.zeros((3, 3, 3))  # dg[k] = d g / d x^k
    for k, (lk, ak, bk) in enumerate(((lx, ax, bx), (ly, ay, by))):
        dg[k] = [
            [2 * lam * lk + 2 * a * ak, ak * b + a * bk, ak],
            [ak * b + a * bk, 2 * lam * lk + 2 * b * bk, bk],
            [ak, bk, 0.0],
        ]
    return g, dg


def metric_at(chart: AmbientChart, p) -> np.ndarray:
    """Metric matrix at ``p``.  For the hyperboloid chart this is the Lorentzian
    form of R^{1,3}; it is positive-definite on constraint-tangent vectors."""
    p = chart.check(p)
    kind = chart.kind
    if kind is ChartKind.CartanEktau:
        return _cartan_metric_and_derivs(chart.params.kappa, chart.params.tau, p)[0]
    if kind is ChartKind.PolarProduct:
        s = _sn(chart.params.kappa, p[0])
        return np.diag([1.0, s * s, 1.0])
    return _LORENTZ.copy()


def metric_derivatives(chart: AmbientChart, p) -> np.ndarray:
    """Array ``dg[k, i, j] = d g_ij / d x^k``."""
    p = chart.check(p)
    if chart.kind is ChartKind.CartanEktau:
        return _cartan_metric_and_derivs(chart.params.kappa, chart.params.tau, p)[1]
    if chart.kind is ChartKind.PolarProduct:
        k = chart.params.kappa
        dg = np.zeros((3, 3, 3))
        dg[0, 1, 1] = 2.0 * _sn(k, p[0]) * _cn(k, p[0])
        return dg
    return np.zeros((4, 4, 4))


def christoffels_at(chart: AmbientChart, p) -> np.ndarray:
    """Connection coefficients ``G[k, i, j]`` (upper index first).

    For the hyperboloid chart the coefficients define the ambient extension
    ``D_X Y - <X, Y>_h p_h`` of the Levi-Civita connection; they are meaningful
    on constraint-tangent arguments only.
    """
    p = chart.check(p)
    if chart.kind is ChartKind.HyperboloidProduct:
        eta_h = np.diag([-1.0, 1.0, 1.0, 0.0])
        ph = np.array([p[0], p[1], p[2], 0.0])
        return -np.einsum("k,ij->kij", ph, eta_h)
    g = metric_at(chart, p)
    dg = metric_derivatives(chart, p)
    ginv = np.linalg.inv(g)
    # lowered: G_lij = 1/2 (d_i g_lj + d_j g_li - d_l g_ij)
    low = 0.5 * (np.einsum("ilj->lij", dg) + np.einsum("jli->lij", dg) - dg)
    return np.einsum("kl,lij->kij", ginv, low)


def inner(chart: AmbientChart, p, X, Y) -> float:
    return float(np.asarray(X) @ metric_at(chart, p) @ np.asarray(Y))


def norm(chart: AmbientChart, p, X) -> float:
    return math.sqrt(max(inner(chart, p, X, X), 0.0))


def vertical_field(chart: AmbientChart, p) -> np.ndarray:
    chart.check(p)
    e = np.zeros(chart.dim)
    e[-1] = 1.0
    return e


def volume_form(chart: AmbientChart, p, X, Y, Z) -> float:
    """Oriented Riemannian volume of ``(X, Y, Z)``."""
    p = chart.check(p)
    if chart.kind is ChartKind.HyperboloidProduct:
        return float(np.linalg.det(np.array([[p[0], p[1], p[2], 0.0], X, Y, Z])))
    g = metric_at(chart, p)
    return float(math.sqrt(np.linalg.det(g)) * np.linalg.det(np.array([X, Y, Z])))


def cross(chart: AmbientChart, p, X, Y) -> np.ndarray:
    """``X ^ Y``: the vector with ``<X ^ Y, Z> = vol(X, Y, Z)`` for all ``Z``."""
    p = chart.check(p)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    n = chart.dim
    cov = np.array([volume_form(chart, p, X, Y, e) for e in np.eye(n)])
    return np.linalg.solve(metric_at(chart, p), cov)


def covariant_derivative(
    chart: AmbientChart,
    p,
    field: Callable[[np.ndarray], np.ndarray],
    direction,
    jacobian: Callable[[np.ndarray], np.ndarray] | None = None,
    step: float = 1e-6,
) -> np.ndarray:
    """``nabla_V X`` at ``p`` for a vector field ``X = field(q)`` and ``V = direction``.

    The directional derivative of the components uses ``jacobian`` when given,
    otherwise a central difference along ``direction``.  Along the hyperboloid
    the difference quotient is taken in R^4, which is exact for the ambient
    extension the Christoffel array encodes.
    """
    p = chart.check(p)
    V = np.asarray(direction, dtype=float)
    if jacobian is not None:
        dX = np.asarray(jacobian(p)) @ V
    else:
        dX = (np.asarray(field(p + step * V)) - np.asarray(field(p - step * V))) / (2 * step)
    G = christoffels_at(chart, p)
    return dX + np.einsum("kij,i,j->k", G, V, np.asarray(field(p), dtype=float))


def killing_defect(chart: AmbientChart, p, X) -> float:
    """``| nabla_X xi - tau X ^ xi |`` (the chart-correctness oracle)."""
    xi = vertical_field(chart, p)
    lhs = np.einsum("kij,i,j->k", christoffels_at(chart, p), X, xi)
    rhs = chart.params.tau * cross(chart, p, X, xi)
    d = lhs - rhs
    return math.sqrt(abs(inner(chart, p, d, d)))


def tangent_projection(chart: AmbientChart, p, X) -> np.ndarray:
    """Project an R^4 vector onto the hyperboloid tangent space (identity otherwise)."""
    X = np.asarray(X, dtype=float)
    if chart.kind is not ChartKind.HyperboloidProduct:
        return X
    ph = np.array([p[0], p[1], p[2], 0.0])
    return X + (ph @ _LORENTZ @ X) * ph


def random_tangent(chart: AmbientChart, p, rng: np.random.Generator) -> np.ndarray:
    return tangent_projection(chart, p, rng.normal(size=chart.dim))


def random_point(chart: AmbientChart, rng: np.random.Generator, radius: float = 1.0) -> np.ndarray:
    """Random in-domain point in a bounded box."""
    k = chart.params.kappa
    if chart.kind is ChartKind.CartanEktau:
        r = min(radius, 1.9) if k < 0 else radius
        while True:
            q = rng.uniform(-r, r, size=3)
            if chart.in_domain(q):
                return q
    if chart.kind is ChartKind.PolarProduct:
        hi = min(radius, math.pi / math.sqrt(k) - 0.1) if k > 0 else radius
        return np.array([rng.uniform(0.1, hi), rng.uniform(0, 2 * math.pi), rng.uniform(-radius, radius)])
    rho, phi = rng.uniform(0, radius), rng.uniform(0, 2 * math.pi)
    return np.array([math.cosh(rho), math.sinh(rho) * math.cos(phi), math.sinh(rho) * math.sin(phi), rng.uniform(-radius, radius)])


# -- plain-text configuration --------------------------------------------------------

CHART_NAMES = {
    "cartan": ChartKind.CartanEktau,
    "cartanektau": ChartKind.CartanEktau,
    "polar": ChartKind.PolarProduct,
    "polarproduct": ChartKind.PolarProduct,
    "hyperboloid": ChartKind.HyperboloidProduct,
    "hyperboloidproduct": ChartKind.HyperboloidProduct,
}


def parse_space_config(text: str) -> AmbientChart:
    """Build a chart from ``key=value`` lines (kappa, tau, chart, validation_mode)."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"line {lineno}: expected key=value, got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in ("kappa", "tau", "chart", "validation_mode"):
            raise ParameterError(f"line {lineno}: unknown key {key!r}")
        values[key] = val
    try:
        kappa = float(values.get("kappa", "-1"))
        tau = float(values.get("tau", "0"))
    except ValueError as exc:
        raise ParameterError(str(exc)) from None
    if kappa.is_integer():
        kappa = int(kappa)
    kind_name = values.get("chart", "cartan").lower()
    if kind_name not in CHART_NAMES:
        raise ParameterError(f"unknown chart {kind_name!r}")
    params = SpaceParams(kappa, tau, values.get("validation_mode", "strict"))
    return AmbientChart(params, CHART_NAMES[kind_name])


def load_space_config(path: str | Path) -> AmbientChart:
    return parse_space_config(Path(path).read_text())
