"""Residual-versus-step study for the discrete holomorphy and structure-equation checks.

    python3 scripts/convergence_study.py [--order 2] [--hs 2e-2 1e-2 5e-3 2.5e-3]
"""

import argparse
import logging

import numpy as np

from ektau import gallery as G
from ektau.arpair import holomorphy_residual
from ektau.grid import SurfaceGrid, observed_order, structure_residuals

SURFACES = [("rotsphere", {}), ("cylwavy", {"kg": 2.0}), ("nilcyl", {}), ("umbrella", {}), ("bumpcyl", {})]


def holomorphy_error(entry, h, order, half_width):
    uc, vc = entry.center
    rep = holomorphy_residual(SurfaceGrid.centered(entry.immersion, uc, vc, half_width, h), order=order)
    mu = np.abs(rep.us - uc) <= half_width + 1e-12
    mv = np.abs(rep.vs - vc) <= half_width + 1e-12
    return float(rep.columns["holomorphy"][np.ix_(mu, mv)].max())


def structure_error(entry, h, order, half_width):
    grid = SurfaceGrid.centered(entry.immersion, *entry.center, half_width, h, margin=order // 2 + 1)
    return structure_residuals(grid, order=order).worst()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=2, choices=(2, 4))
    ap.add_argument("--hs", type=float, nargs="+", default=[2e-2, 1e-2, 5e-3, 2.5e-3])
    ap.add_argument("--half-width", type=float, default=0.1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.ERROR)

    for label, fn in (("|d_zbar Q^AR|", holomorphy_error), ("structure equations", structure_error)):
        print(f"\n{label}, order {args.order}")
        print(f"{'surface':<24}" + "".join(f"{h:>12.1e}" for h in args.hs) + "   observed orders")
        for name, kw in SURFACES:
            entry = G.gallery_entry(name, **kw)
            errs = [fn(entry, h, args.order, args.half_width) for h in args.hs]
            orders = observed_order(args.hs, errs) if min(errs) > 1e-10 else []
            note = "" if entry.cmc else "  (not CMC)"
            print(f"{entry.immersion.name:<24}" + "".join(f"{e:>12.3e}" for e in errs)
                  + "   " + (" ".join(f"{p:5.2f}" for p in orders) or "round-off") + note)


if __name__ == "__main__":
    main()
