"""Invariant surfaces of the left-invariant distributions span{e_i, e_j} over a (xi, eta) grid."""
import argparse
import csv
import sys

import numpy as np

from cmcgauss import gaussmap
from cmcgauss.geometry import riemann_tensor
from cmcgauss.surfaces import (FRAME_IDS, catalog_frame_surface, gauss_curvature,
                               invariant_frame_jet, invariant_surface_jet, tangent_plane_curvature)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh)
    w.writerow(["surface", "xi", "eta", "integrable", "H_norm", "K", "r1213", "r2123", "cases"])
    for xi in np.linspace(0.05, 2.5, args.n):
        if abs(xi - 1) < 1e-9:
            continue
        for eta in np.linspace(0, 2, args.n):
            for sid in FRAME_IDS:
                spec = catalog_frame_surface(sid, xi, eta)
                res = invariant_surface_jet(spec)
                if not res.integrable:
                    w.writerow([sid, f"{xi:.6g}", f"{eta:.6g}", 0, "", "", "", "", ""])
                    continue
                curv = riemann_tensor(spec.group)
                jet = invariant_frame_jet(spec)
                d = gaussmap.gauss_diagnostics(curv, jet)
                K = gauss_curvature(jet, tangent_plane_curvature(curv, jet))
                w.writerow([sid, f"{xi:.6g}", f"{eta:.6g}", 1, f"{res.H_norm:.12g}", f"{K:.3g}",
                            f"{d.r1213:.3g}", f"{d.r2123:.3g}", "+".join(sorted(d.cases))])
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
