"""Generate rotational and parabolic meridians for the AR families and self-check them.

    python3 scripts/meridian_gallery.py [--out DIR] [--samples 201]
"""

import argparse
import json
import math
from pathlib import Path

import numpy as np

from ektau.ambient import SpaceParams
from ektau.cli import MERIDIAN_COLUMNS, meridian_table

CASES = [
    (-1, "S2_H", 1 / math.sqrt(2)),
    (-1, "S2_H", 0.9),
    (1, "S2_H", 1.0),
    (1, "S2_H", 0.4),
    (-1, "C2_H", 0.3),
    (-1, "D2_H", 0.5),
    (-1, "P2_H", 0.3),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=201)
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()

    print(f"{'family':<6}{'kappa':>6}{'H':>10}{'|H-H0|':>12}{'max|Q^AR|':>12}{'K_min':>10}  classification")
    summary = []
    for k, fam, H in CASES:
        rows, meta = meridian_table(SpaceParams(k, 0.0), fam, H, args.samples)
        print(f"{fam:<6}{k:>6}{H:>10.4f}{meta['H_error']:>12.1e}{meta['QAR_max']:>12.1e}{meta['K_min']:>10.3f}  "
              f"{meta['classification']}")
        summary.append(meta)
        if args.out is not None:
            args.out.mkdir(parents=True, exist_ok=True)
            name = f"meridian_{fam}_k{k:+d}_H{H:.4f}.csv"
            np.savetxt(args.out / name, np.array(rows), delimiter=",", header=",".join(MERIDIAN_COLUMNS), comments="")
    if args.out is not None:
        (args.out / "meridians.json").write_text(json.dumps(summary, indent=2, default=str))


if __name__ == "__main__":
    main()
