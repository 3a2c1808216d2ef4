"""Sweep the E(1,1) metric parameters and record worst-case residuals of both minimal surface families.

Writes one CSV row per (lambda1, lambda2).
"""
import argparse
import csv
import sys
import warnings

import numpy as np

from cmcgauss.classification import patch_grid_stats
from cmcgauss.surfaces import catalog_patch


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lambdas", type=int, default=10, help="points per lambda axis on [0.5, 2]")
    ap.add_argument("--grid", type=int, default=8, help="(u, v) grid size on [-2, 2]^2")
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh)
    w.writerow(["lambda1", "lambda2", "i_max_H", "i_max_K", "i_max_vertical",
                "ii_max_H", "ii_max_vertical"])
    lams = np.linspace(0.5, 2.0, args.lambdas)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for l1 in lams:
            for l2 in lams:
                s1 = patch_grid_stats(catalog_patch("thm53-i", l1, l2), args.grid)
                s2 = patch_grid_stats(catalog_patch("thm53-ii", l1, l2), args.grid)
                w.writerow([f"{x:.6g}" for x in (l1, l2, s1["max_H"], s1["max_K"], s1["max_vertical"],
                                                 s2["max_H"], s2["max_vertical"])])
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
