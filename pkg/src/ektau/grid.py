"""Rectangular parameter lattices, central-difference stencils and residual reports."""

from __future__ import annotations

import json
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .surface import Immersion, PointGeometry, UnsupportedCoordinatesError, point_geometry

logger = logging.getLogger("ektau")

# central first-derivative weights, offsets -m..m
_D1 = {
    2: np.array([-0.5, 0.0, 0.5]),
    4: np.array([1 / 12, -2 / 3, 0.0, 2 / 3, -1 / 12]),
}
# central second-derivative weights
_D2 = {
    2: np.array([1.0, -2.0, 1.0]),
    4: np.array([-1 / 12, 4 / 3, -5 / 2, 4 / 3, -1 / 12]),
}


class GridError(ValueError):
    """Grid too small for the requested stencil."""


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("EKTAU_THREADS", "1")))
    except ValueError:
        return 1


def _apply(F: np.ndarray, axis: int, w: np.ndarray, h: float, power: int) -> np.ndarray:
    m = len(w) // 2
    out = np.full(F.shape, np.nan, dtype=np.result_type(F, float))
    n = F.shape[axis]
    if n < 2 * m + 1:
        raise GridError(f"need at least {2 * m + 1} nodes along axis {axis}, have {n}")
    acc = 0
    for k, wk in enumerate(w):
        if wk == 0.0:
            continue
        sl = [slice(None)] * F.ndim
        sl[axis] = slice(k, n - 2 * m + k)
        acc = acc + wk * F[tuple(sl)]
    sl = [slice(None)] * F.ndim
    sl[axis] = slice(m, n - m)
    out[tuple(sl)] = acc / h**power
    return out


def d_du(F, h, order=2):
    return _apply(np.asarray(F), 0, _D1[order], h, 1)


def d_dv(F, h, order=2):
    return _apply(np.asarray(F), 1, _D1[order], h, 1)


def d_z(F, h, order=2):
    return 0.5 * (d_du(F, h, order) - 1j * d_dv(F, h, order))


def d_zbar(F, h, order=2):
    return 0.5 * (d_du(F, h, order) + 1j * d_dv(F, h, order))


def laplacian(F, h, order=2):
    F = np.asarray(F)
    return _apply(F, 0, _D2[order], h, 2) + _apply(F, 1, _D2[order], h, 2)


@dataclass
class SurfaceGrid:
    """Uniform lattice ``u = u0 + i h``, ``v = v0 + j h`` over an immersion."""

    immersion: Immersion
    u0: float
    v0: float
    nu: int
    nv: int
    h: float
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.nu < 3 or self.nv < 3:
            raise GridError("a surface grid needs at least 3 nodes per axis")
        if not self.h > 0:
            raise GridError("grid spacing must be positive")

    @classmethod
    def centered(cls, imm: Immersion, uc: float, vc: float, half_width: float, h: float, margin: int = 2):
        """Grid of spacing ``h`` covering ``[uc - w, uc + w] x [vc - w, vc + w]``
        plus ``margin`` ghost nodes for the stencils."""
        n = int(round(half_width / h))
        nn = 2 * (n + margin) + 1
        return cls(imm, uc - (n + margin) * h, vc - (n + margin) * h, nn, nn, h)

    @property
    def us(self) -> np.ndarray:
        return self.u0 + self.h * np.arange(self.nu)

    @property
    def vs(self) -> np.ndarray:
        return self.v0 + self.h * np.arange(self.nv)

    def nodes(self):
        for i, u in enumerate(self.us):
            for j, v in enumerate(self.vs):
                yield i, j, float(u), float(v)

    def geometry(self) -> list[list[PointGeometry]]:
        if "pg" not in self._cache:
            nodes = list(self.nodes())
            imm = self.immersion
            workers = thread_count()
            if workers > 1:
                with ThreadPoolExecutor(max_workers=workers) as ex:
                    pgs = list(ex.map(lambda n: point_geometry(imm, n[2], n[3]), nodes))
            else:
                pgs = [point_geometry(imm, u, v) for _, _, u, v in nodes]
            table = [[None] * self.nv for _ in range(self.nu)]
            for (i, j, _, _), pg in zip(nodes, pgs):
                table[i][j] = pg
            self._cache["pg"] = table
        return self._cache["pg"]

    def field(self, fn) -> np.ndarray:
        """Array of ``fn(pg)`` over the lattice."""
        geo = self.geometry()
        vals = [[fn(geo[i][j]) for j in range(self.nv)] for i in range(self.nu)]
        return np.array(vals)

    def require_isothermal(self, tol: float = 1e-8) -> None:
        worst = float(self.field(lambda pg: pg.isothermal_defect).max())
        if worst > tol:
            raise UnsupportedCoordinatesError(f"grid over {self.immersion.name} is not isothermal (defect {worst:.3e})")

    def mean_curvature_spread(self) -> float:
        H = self.field(lambda pg: pg.H)
        return float(H.max() - H.min())

    def check_cmc(self, tol: float = 1e-6) -> bool:
        spread = self.mean_curvature_spread()
        if spread > tol:
            logger.warning("mean curvature not constant on %s (spread %.3e); CMC identities downgraded to warnings",
                           self.immersion.name, spread)
            return False
        return True


# -- reports -------------------------------------------------------------------------------


def fmt(x) -> str:
    return f"{float(x):.17g}"


@dataclass
class ResidualReport:
    """Per-node residual columns over the interior of a grid."""

    name: str
    us: np.ndarray
    vs: np.ndarray
    columns: dict[str, np.ndarray]
    tol: float | None = None
    warnings: list[str] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def max(self, col: str) -> float:
        a = self.columns[col]
        a = a[np.isfinite(a)]
        return float(a.max()) if a.size else 0.0

    def mean(self, col: str) -> float:
        a = self.columns[col]
        a = a[np.isfinite(a)]
        return float(a.mean()) if a.size else 0.0

    def worst(self) -> float:
        return max((self.max(c) for c in self.columns), default=0.0)

    def passed(self, tol: float | None = None, cols=None) -> bool:
        tol = self.tol if tol is None else tol
        cols = self.columns if cols is None else cols
        return all(self.max(c) <= tol for c in cols)

    def summary(self) -> dict:
        out = {
            "name": self.name,
            "nodes": int(self.us.size * self.vs.size),
            "columns": {c: {"max": self.max(c), "mean": self.mean(c)} for c in self.columns},
            "warnings": list(self.warnings),
        }
        if self.tol is not None:
            out["tol"] = self.tol
            out["passed"] = self.passed()
        out.update(self.meta)
        return out

    def to_csv(self, path) -> None:
        cols = list(self.columns)
        lines = [",".join(["u", "v", *cols])]
        for i, u in enumerate(self.us):
            for j, v in enumerate(self.vs):
                vals = [self.columns[c][i, j] for c in cols]
                if not all(np.isfinite(vals)):
                    continue
                lines.append(",".join([fmt(u), fmt(v), *(fmt(x) for x in vals)]))
        Path(path).write_text("\n".join(lines) + "\n")

    def to_json(self, path) -> None:
        Path(path).write_text(json.dumps(self.summary(), indent=2, sort_keys=True) + "\n")


def interior_report(grid: SurfaceGrid, name: str, columns: dict[str, np.ndarray], margin: int, **kw) -> ResidualReport:
    sl = (slice(margin, grid.nu - margin), slice(margin, grid.nv - margin))
    return ResidualReport(name, grid.us[sl[0]], grid.vs[sl[1]], {k: np.asarray(v)[sl] for k, v in columns.items()}, **kw)


# -- structure equations -------------------------------------------------------------------------

STRUCTURE_COLUMNS = ("gauss", "codazzi_Q", "t_z", "t_zbar", "nu_z", "t_norm", "unit_xi")


def structure_residuals(grid: SurfaceGrid, order: int = 2, tol: float | None = None) -> ResidualReport:
    """Residuals of the conformal structure equations of an H-surface.

    Columns: ``gauss``  |K - (K_e + tau^2 + (kappa - 4 tau^2) nu^2)|, with K from
    the conformal factor;  ``codazzi_Q``  |Q_zbar - lam (kappa - 4 tau^2) nu t|;
    ``t_z``  |t_z - (lam_z / lam) t - Q nu|;  ``t_zbar``  |t_zbar - lam (H + i tau) nu|;
    ``nu_z``  |nu_z + (H - i tau) t + (Q / lam) conj(t)|;  ``t_norm``
    ||t|^2 - lam (1 - nu^2) / 2|;  ``unit_xi``  ||T|^2 + nu^2 - 1|.
    """
    m = order // 2
    if grid.nu < 2 * m + 1 or grid.nv < 2 * m + 1:
        raise GridError(f"order-{order} stencils need at least {2 * m + 1} nodes per axis")
    grid.require_isothermal()
    warnings = [] if grid.check_cmc() else ["mean curvature not constant on grid"]
    params = grid.immersion.chart.params
    tau, kmt = params.tau, params.kmt
    h = grid.h
    Q = grid.field(lambda pg: pg.Q)
    t = grid.field(lambda pg: pg.t)
    nu = grid.field(lambda pg: pg.nu)
    lam = grid.field(lambda pg: pg.lam)
    H = grid.field(lambda pg: pg.H)
    Ke = grid.field(lambda pg: pg.K_e)
    TT = grid.field(lambda pg: float(pg.T_coords @ pg.I @ pg.T_coords))
    K = -laplacian(np.log(lam), h, order) / (4 * lam)
    cols = {
        "gauss": np.abs(K - (Ke + tau**2 + kmt * nu**2)),
        "codazzi_Q": np.abs(d_zbar(Q, h, order) - lam * kmt * nu * t),
        "t_z": np.abs(d_z(t, h, order) - d_z(lam, h, order) / lam * t - Q * nu),
        "t_zbar": np.abs(d_zbar(t, h, order) - lam * (H + 1j * tau) * nu),
        "nu_z": np.abs(d_z(nu, h, order) + (H - 1j * tau) * t + Q / lam * np.conj(t)),
        "t_norm": np.abs(np.abs(t) ** 2 - 0.5 * lam * (1 - nu**2)),
        "unit_xi": np.abs(TT + nu**2 - 1),
    }
    return interior_report(grid, "structure", cols, m, tol=tol, warnings=warnings, meta={"order": order, "h": h})


def gauss_equation_grid(grid: SurfaceGrid, order: int = 2) -> ResidualReport:
    rep = structure_residuals(grid, order)
    return ResidualReport("gauss", rep.us, rep.vs, {"gauss": rep.columns["gauss"]}, warnings=rep.warnings)


def observed_order(hs, errors) -> list[float]:
    """Successive convergence orders ``log(e_k / e_{k+1}) / log(h_k / h_{k+1})``."""
    out = []
    for (h0, e0), (h1, e1) in zip(zip(hs, errors), zip(hs[1:], errors[1:])):
        out.append(math.log(e0 / e1) / math.log(h0 / h1))
    return out
