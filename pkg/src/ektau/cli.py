"""Command-line front door: ``ektau check-surface | key-lemma | example-h2xr | meridians``.

Exit codes: 0 pass, 1 a residual exceeded its tolerance (or a verified conclusion
failed), 2 configuration error, 3 numeric failure, 4 hypotheses unmet.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import gallery as G
from .ambient import CHART_NAMES, DomainError, ParameterError, SpaceParams
from .arpair import ar_operator, classify_ar, codazzi_residual, FundamentalPair, holomorphy_residual
from .curvelab import (
    Companion, CurveOnSurface, RegularityError, TraceMismatchError, Verdict, ar_locus_residual, boundary_from,
    classify_curve, corollary_config, disk_report, key_lemma_condition_b, key_lemma_verify,
)
from .grid import GridError, ResidualReport, SurfaceGrid, fmt, gauss_equation_grid, structure_residuals
from .surface import UnsupportedCoordinatesError, gauss_rhs, point_geometry

logger = logging.getLogger("ektau")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC, EXIT_UNMET = 0, 1, 2, 3, 4

COMMANDS = ("check-surface", "key-lemma", "example-h2xr", "meridians")
PAIRS = ("fiber", "caps", "tangent", "example")
MUTATIONS = ("none", "angle", "nu")
FAMILIES = ("S2_H", "D2_H", "C2_H", "P2_H")
DEFAULT_H = {"S2_H": 1 / math.sqrt(2), "D2_H": 0.5, "C2_H": 0.3, "P2_H": 0.3}
MERIDIAN_COLUMNS = ("s", "rho", "h", "H_measured", "QAR_abs")


class ConfigError(ValueError):
    """Invalid run configuration."""


@dataclass
class RunConfig:
    command: str
    kappa: float | None = None
    tau: float | None = None
    chart: str | None = None
    gallery: str = "slice"
    H: float | None = None
    kg: float | None = None
    h: float = 1e-2
    half_width: float | None = None
    order: int = 4
    tol: float = 1e-6
    out: str | None = None
    format: str = "csv"
    pair: str = "fiber"
    mutate: str = "none"
    families: list[str] = field(default_factory=lambda: list(FAMILIES))
    samples: int = 201

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not self.tol > 0:
            raise ConfigError("tolerances must be positive")
        if not self.h > 0:
            raise ConfigError("grid step must be positive")
        if self.half_width is not None and 2 * round(self.half_width / self.h) + 1 < 3:
            raise ConfigError("resolution yields fewer than 3 nodes per axis")
        if self.order not in (2, 4):
            raise ConfigError("stencil order must be 2 or 4")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.chart is not None and self.chart.lower() not in CHART_NAMES:
            raise ConfigError(f"unknown chart {self.chart!r}")
        if self.gallery not in G.GALLERY_NAMES:
            raise ConfigError(f"unknown gallery surface {self.gallery!r}; choose from {', '.join(G.GALLERY_NAMES)}")
        if self.pair not in PAIRS:
            raise ConfigError(f"unknown pair {self.pair!r}")
        if self.mutate not in MUTATIONS:
            raise ConfigError(f"unknown mutation {self.mutate!r}")
        bad = [f for f in self.families if f not in FAMILIES]
        if bad:
            raise ConfigError(f"unknown families {bad}")
        if self.samples < 2:
            raise ConfigError("need at least 2 samples")
        return self


def load_config(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown config keys {unknown}")
    return data


def _out_dir(cfg: RunConfig) -> Path | None:
    if cfg.out is None:
        return None
    p = Path(cfg.out)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _write_json(path: Path, data) -> None:
    path.write_text(json.dumps(data, indent=2, sort_keys=True, default=_json_default) + "\n")


def _json_default(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    raise TypeError(type(x))


# -- check-surface ----------------------------------------------------------------------------


def _check_chart(cfg: RunConfig, chart) -> None:
    if cfg.chart is not None and CHART_NAMES[cfg.chart.lower()] is not chart.kind:
        raise ConfigError(f"{cfg.gallery} lives in the {chart.kind.name} chart, not {cfg.chart}")


def cmd_check_surface(cfg: RunConfig) -> int:
    entry = G.gallery_entry(cfg.gallery, kappa=cfg.kappa, tau=cfg.tau, H=cfg.H, kg=cfg.kg)
    _check_chart(cfg, entry.immersion.chart)
    hw = entry.half_width if cfg.half_width is None else cfg.half_width
    grid = SurfaceGrid.centered(entry.immersion, *entry.center, hw, cfg.h, margin=cfg.order // 2 + 1)
    reports: list[tuple[ResidualReport, tuple]] = []
    st = structure_residuals(grid, cfg.order, tol=cfg.tol)
    reports.append((st, tuple(st.columns)))
    ga = gauss_equation_grid(grid, cfg.order)
    reports.append((ga, ("gauss",)))
    cz = codazzi_residual(FundamentalPair.from_grid(grid, "ar"), cfg.order, tol=cfg.tol)
    reports.append((cz, tuple(cz.columns)))
    ho = holomorphy_residual(grid, cfg.order, tol=cfg.tol)
    reports.append((ho, ("holomorphy", "direct")))
    ok = True
    out = _out_dir(cfg)
    summary = {"surface": entry.immersion.name, "h": cfg.h, "order": cfg.order, "tol": cfg.tol, "reports": {}}
    for rep, cols in reports:
        passed = rep.passed(cfg.tol, cols)
        ok &= passed
        s = rep.summary()
        s["checked_columns"] = list(cols)
        s["passed"] = passed
        summary["reports"][rep.name] = s
        print(f"{rep.name:12s} {'PASS' if passed else 'FAIL'}  " +
              "  ".join(f"{c}={fmt(rep.max(c))}" for c in rep.columns))
        if out is not None:
            path = out / f"{cfg.gallery}_{rep.name}.{cfg.format}"
            rep.to_csv(path) if cfg.format == "csv" else rep.to_json(path)
    if out is not None:
        _write_json(out / f"{cfg.gallery}_summary.json", summary)
    return EXIT_OK if ok else EXIT_FAIL


# -- key-lemma --------------------------------------------------------------------------------


def build_pair(name: str):
    if name == "fiber":
        return G.nil_fiber_pair()
    if name == "caps":
        return G.mirrored_caps()[0]
    if name == "tangent":
        return G.tangent_nil_planes()
    return G.example_intersection()


def cmd_key_lemma(cfg: RunConfig) -> int:
    ix = build_pair(cfg.pair)
    if cfg.mutate == "angle":
        ix = ix.rotated_normal(1e-3)
    elif cfg.mutate == "nu":
        try:
            ix = ix.shifted_nu(1e-3)
        except ValueError as exc:
            raise ConfigError(f"nu mutation not available for {cfg.pair}: {exc}") from None
    rep = key_lemma_verify(ix)
    conf = corollary_config(ix)
    data = {"pair": cfg.pair, "mutation": cfg.mutate, **rep.as_dict(), "configurations": conf.as_dict(),
            "d_mean": float(np.mean(ix.d)), "d_spread": float(np.ptp(ix.d))}
    print(f"key-lemma[{cfg.pair}, mutation={cfg.mutate}]: {rep.verdict.value} via {rep.route}")
    for r in rep.reasons:
        print(f"  - {r}")
    print(f"  d = {fmt(np.mean(ix.d))} (spread {fmt(np.ptp(ix.d))}); configurations: {conf.as_dict()['matched']}")
    out = _out_dir(cfg)
    if out is not None:
        if cfg.format == "json":
            _write_json(out / f"key_lemma_{cfg.pair}.json", data)
        else:
            key_lemma_condition_b(ix).to_csv(out / f"key_lemma_{cfg.pair}.csv")
    return {Verdict.Verified: EXIT_OK, Verdict.Unmet: EXIT_UNMET, Verdict.Violated: EXIT_FAIL}[rep.verdict]


# -- example-h2xr -------------------------------------------------------------------------------


def example_pipeline(n: int = 181) -> dict:
    """The full plane/sphere example: contact angle, AR status of both surfaces, the
    intersection curve as a (non) AR line of curvature, and the disk report."""
    ex = G.example_objects()
    ix = G.example_intersection(n)
    sph = G.example_sphere_conformal()
    s = ix.c1.s
    qs = [abs(ar_operator(sph, w, v).Q_AR) for w in np.linspace(-1.0, 1.0, 9) for v in (0.0, 1.0, 2.5)]
    qp = [ar_operator(ex.plane, x, y).Q_AR for x in (-0.5, 0.0, 0.7) for y in (-1.0, 0.0, 1.0)]
    loc = ar_locus_residual(ix.c1)
    flags = classify_curve(ix.c1)
    sig = np.linspace(-math.pi, 3 * math.pi, 401)
    loop = CurveOnSurface(ex.plane, G.boundary_loop, sig, name="loop")
    disk = disk_report(ex.plane, boundary_from([loop]), [(0.0, 0.0), (0.3, 0.2), (-0.5, 0.5)], [Companion(0, ix)])
    return {
        "s": s,
        "d": ix.d,
        "ar_locus_plane": loc.columns["residual"],
        "angle_max": float(np.abs(ix.d).max()),
        "sphere_QAR_max": float(max(qs)),
        "plane_QAR_offset": float(max(abs(q + 0.25) for q in qp)),
        "plane_QAR": complex(qp[0]),
        "ar_locus_max": loc.max("residual"),
        "horizontal": flags.horizontal,
        "vertical": flags.vertical,
        "disk": disk,
    }


def cmd_example_h2xr(cfg: RunConfig) -> int:
    r = example_pipeline()
    disk = r["disk"]
    ok = (r["angle_max"] <= 1e-8 and r["sphere_QAR_max"] <= 1e-8 and r["plane_QAR_offset"] <= 1e-8
          and r["ar_locus_max"] >= 0.01 and bool(disk.violated))
    print(f"contact angle     max|<N1,N2>| = {fmt(r['angle_max'])} (orthogonal along the curve)")
    print(f"sphere            max|Q^AR| = {fmt(r['sphere_QAR_max'])} (Abresch-Rosenberg)")
    print(f"plane             Q^AR = {fmt(r['plane_QAR'].real)} (max |Q^AR + 1/4| = {fmt(r['plane_QAR_offset'])})")
    print(f"curve on plane    max AR-locus residual = {fmt(r['ar_locus_max'])}; "
          f"horizontal={r['horizontal']} vertical={r['vertical']}")
    print(f"disk report       {disk.verdict}")
    print("verdict           the sphere meets the plane orthogonally, yet the plane is not part of an "
          "Abresch-Rosenberg surface: the intersection hypotheses fail")
    out = _out_dir(cfg)
    if out is not None:
        if cfg.format == "csv":
            lines = ["s,d,ar_locus_plane"]
            lines += [",".join(fmt(x) for x in row) for row in zip(r["s"], r["d"], r["ar_locus_plane"])]
            (out / "example_h2xr.csv").write_text("\n".join(lines) + "\n")
        else:
            data = {k: v for k, v in r.items() if k not in ("s", "d", "ar_locus_plane", "disk")}
            data["disk"] = disk.as_dict()
            _write_json(out / "example_h2xr.json", data)
    return EXIT_OK if ok else EXIT_FAIL


# -- meridians ----------------------------------------------------------------------------------


def meridian_table(params: SpaceParams, family: str, H: float, samples: int):
    """Profile samples with the measured mean curvature and AR coefficient of the
    generated surface at each sample."""
    prof, imm = G.rotational_cmc(params, H, G.Family(family), samples=samples)
    rows, Ks = [], []
    for w, s, rho, h in zip(prof.w, prof.s, prof.rho, prof.h):
        u, v = (0.0, float(w)) if prof.family is G.Family.Parabolic else (float(w), 0.3)
        pg = point_geometry(imm, u, v)
        d = ar_operator(imm, u, v)
        q = abs(d.Q_AR) if d.Q_AR is not None else 2 * pg.lam * d.invariant_norm
        rows.append((float(s), float(rho), float(h), float(pg.H), float(q)))
        Ks.append(gauss_rhs(pg, params.kappa, params.tau))
    verdict, note = classify_ar(params, H)
    meta = {
        "family": family,
        "kappa": params.kappa,
        "H": H,
        "surface": imm.name,
        "samples": len(rows),
        "H_error": max(abs(r[3] - H) for r in rows),
        "QAR_max": max(r[4] for r in rows),
        "K_min": float(min(Ks)),
        "somewhere_K_negative": bool(min(Ks) < 0),
        "classification": verdict.value,
        "classification_note": note,
        **{k: v for k, v in prof.meta.items()},
    }
    if prof.family in (G.Family.DiskType, G.Family.Parabolic):
        meta["label"] = "reconstruction"
    return rows, meta


def cmd_meridians(cfg: RunConfig) -> int:
    k = -1 if cfg.kappa is None else cfg.kappa
    if cfg.tau not in (None, 0, 0.0):
        raise ConfigError("meridians are generated in product spaces (tau = 0)")
    if cfg.chart is not None and CHART_NAMES[cfg.chart.lower()].name != "PolarProduct":
        raise ConfigError("meridian surfaces live in the polar chart")
    params = SpaceParams(k, 0.0)
    out = _out_dir(cfg)
    manifest = []
    ok = True
    for fam in cfg.families:
        H = DEFAULT_H[fam] if cfg.H is None else cfg.H
        rows, meta = meridian_table(params, fam, H, cfg.samples)
        passed = meta["H_error"] <= cfg.tol and meta["QAR_max"] <= cfg.tol
        meta["passed"] = passed
        ok &= passed
        flag = f" [{meta['classification']}]"
        print(f"{fam} kappa={k:g} H={H:.17g}: |H-H0|={fmt(meta['H_error'])} max|Q^AR|={fmt(meta['QAR_max'])}"
              f" K_min={fmt(meta['K_min'])}{flag}")
        if out is not None:
            name = f"meridian_{fam}.csv"
            lines = [",".join(MERIDIAN_COLUMNS)] + [",".join(fmt(x) for x in r) for r in rows]
            (out / name).write_text("\n".join(lines) + "\n")
            meta["csv"] = name
        manifest.append(meta)
    if out is not None:
        _write_json(out / "meridians.json", manifest)
    return EXIT_OK if ok else EXIT_FAIL


# -- entry point -------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ektau", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="JSON file mirroring the flags (flags win)")
    ap.add_argument("--kappa", type=float)
    ap.add_argument("--tau", type=float)
    ap.add_argument("--chart", help="cartan | polar | hyperboloid")
    ap.add_argument("--gallery", help="gallery surface: " + ", ".join(G.GALLERY_NAMES))
    ap.add_argument("--H", type=float, help="mean curvature")
    ap.add_argument("--kg", type=float, help="geodesic curvature of the cylinder base curve")
    ap.add_argument("--h", type=float, help="grid step")
    ap.add_argument("--half-width", type=float, dest="half_width", help="half side of the sampled square")
    ap.add_argument("--order", type=int, help="stencil order (2 or 4, default 4)")
    ap.add_argument("--tol", type=float)
    ap.add_argument("--out", help="output directory")
    ap.add_argument("--format", choices=("csv", "json"))
    ap.add_argument("--pair", choices=PAIRS, help="key-lemma configuration")
    ap.add_argument("--mutate", choices=MUTATIONS, help="key-lemma mutation")
    ap.add_argument("--family", action="append", dest="families", help="meridian family (repeatable)")
    ap.add_argument("--samples", type=int)
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def make_config(argv=None) -> tuple[RunConfig, bool]:
    args = build_parser().parse_args(argv)
    data = load_config(args.config) if args.config else {}
    for k, v in vars(args).items():
        if k in ("config", "verbose") or v is None:
            continue
        data[k] = v
    kappa = data.get("kappa")
    if isinstance(kappa, float) and kappa.is_integer():
        data["kappa"] = int(kappa)
    try:
        cfg = RunConfig(**data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    return cfg.validate(), args.verbose


HANDLERS = {
    "check-surface": cmd_check_surface,
    "key-lemma": cmd_key_lemma,
    "example-h2xr": cmd_example_h2xr,
    "meridians": cmd_meridians,
}


def main(argv=None) -> int:
    try:
        cfg, verbose = make_config(argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return HANDLERS[cfg.command](cfg)
    except (ConfigError, ParameterError, DomainError, GridError, UnsupportedCoordinatesError, G.UnsupportedError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (G.NumericError, RegularityError, TraceMismatchError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
