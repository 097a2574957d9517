"""Finite-difference error of the per-mode Landau levels versus grid size.

    python scripts/landau_convergence.py [--B 1.0] [--levels 4]

Prints the error table and the observed order between successive grids.
"""
import argparse
import math

import numpy as np

from cylinder_landau import spectral
from cylinder_landau.core import new_config


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--B", type=float, default=1.0)
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--sizes", type=int, nargs="+", default=[251, 501, 1001, 2001, 4001])
    args = p.parse_args()

    cfg = new_config(B=args.B)
    exact = np.array([spectral.landau_level(cfg, N) for N in range(args.levels)])
    prev = None
    print(f"{'points':>7} {'h':>10} " + " ".join(f"{'err N=' + str(N):>11}" for N in range(args.levels)) + "  order")
    for n_points in args.sizes:
        grid = spectral.default_grid(cfg, 0, 0, n_points)
        vals, _ = spectral.eigensolve(spectral.mode_hamiltonian(cfg, 0, grid), args.levels)
        err = np.abs(vals - exact)
        order = "" if prev is None else f"{math.log2(prev[1].max() / err.max()) / math.log2(prev[0] / grid.spacing):.3f}"
        print(f"{n_points:>7} {grid.spacing:>10.3e} " + " ".join(f"{e:>11.3e}" for e in err) + f"  {order}")
        prev = (grid.spacing, err)


if __name__ == "__main__":
    main()
