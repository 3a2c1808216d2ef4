"""Minimal surfaces in Sol (E(1,1) with lambda1 = lambda2 = 1).

Prints the grid summary of both surface families, checks the explicit
parametrization family for a few integration constants, and optionally dumps
samples of the explicit surface for plotting.
"""
import argparse
import csv

import numpy as np

from cmcgauss.classification import (e11_frame_system_residual, patch_grid_stats,
                                     theta_rk4_deviation, thm53_frame_equation_residual,
                                     thm53_parametrization)
from cmcgauss.models import left_translation, thm53_normalizing_point
from cmcgauss.surfaces import catalog_patch


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=20)
    ap.add_argument("--csv", help="dump (u, v, x, y, z) of the explicit surface with c = a1 = a2 = 0")
    args = ap.parse_args()

    for sid in ("thm53-i", "thm53-ii"):
        s = patch_grid_stats(catalog_patch(sid, 1, 1), args.grid)
        print(f"{sid}: max|H|={s['max_H']:.2e} max|K|={s['max_K']:.2e} "
              f"vertical={s['max_vertical']:.2e} harmonic gap={s['max_harmonic_gap']:.2e} cases={s['cases']}")

    grid = np.linspace(-2, 2, args.grid)
    for c, a1, a2 in [(0, 0, 0), (0.5, 1, -1), (-1.5, 0.2, 0.3)]:
        patch = thm53_parametrization(1, c, a1, a2)
        A = thm53_normalizing_point(1, c, a1, a2)
        frame = max(thm53_frame_equation_residual(patch, 1, c, u, v) for u in grid for v in grid)
        trans = max(abs(sum(left_translation(patch.model, A, patch.point(u, v))[:2]))
                    for u in grid for v in grid)
        system = max(max(map(abs, e11_frame_system_residual(patch, u, v, 1).values()))
                     for u in grid[::2] for v in grid[::2] if abs(u) > 1e-9)
        print(f"c={c:+.2f} a=({a1:+.1f},{a2:+.1f}): frame eqs {frame:.1e}, |x+y| after translation {trans:.1e}, "
              f"frame system {system:.1e}, theta vs RK4 {theta_rk4_deviation(1, c):.1e}")

    if args.csv:
        patch = thm53_parametrization(1, 0, 0, 0)
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["u", "v", "x", "y", "z"])
            for u in grid:
                for v in grid:
                    w.writerow([f"{t:.12g}" for t in (u, v, *patch.point(u, v))])


if __name__ == "__main__":
    main()
