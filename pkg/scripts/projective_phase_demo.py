"""Rotations and admissible axial shifts commute up to exp(i k phi).

    python scripts/projective_phase_demo.py [--q 0.3] [--rho 0.1] [--B 2]

For a grid of (phi, k) the script measures the phase relating UV and VU on
a random smooth state and compares it to exp(i k phi).
"""
import argparse
import math

import numpy as np

from cylinder_landau import spectral, symmetry
from cylinder_landau.core import new_config
from cylinder_landau.errors import NonAdmissibleTranslation
from cylinder_landau.hilbert import inner_product, smooth_random_state


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--B", type=float, default=2.0)
    p.add_argument("--q", type=float, default=0.3)
    p.add_argument("--rho", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    cfg = new_config(B=args.B, q=args.q, rho=args.rho)
    rng = np.random.default_rng(args.seed)
    grid = spectral.default_grid(cfg, -8, 8, 1601, n_sigma=14)
    centers = {n: spectral.mode_center(cfg, n) for n in range(-2, 3)}
    psi = smooth_random_state(cfg.q, grid, range(-2, 3), rng, centers)

    print(f"mu = {cfg.mu:g}, admissible step 1/mu = {1 / cfg.mu:g}")
    print(f"{'phi':>7} {'k':>3} {'measured arg':>13} {'k*phi mod 2pi':>14} {'residual':>10}")
    for phi in (0.3, 1.0, math.pi / 2, 2.5):
        for k in (-2, 1, 3):
            uv = symmetry.apply_U(cfg, phi, symmetry.apply_V(cfg, k, psi))
            vu = symmetry.apply_V(cfg, k, symmetry.apply_U(cfg, phi, psi))
            ratio = inner_product(vu, uv) / inner_product(vu, vu)
            want = np.angle(np.exp(1j * k * phi))
            print(f"{phi:>7.3f} {k:>3d} {np.angle(ratio):>13.9f} {want:>14.9f} "
                  f"{symmetry.projective_phase_check(cfg, phi, k, psi):>10.2e}")

    for a in (0.5 / cfg.mu, math.sqrt(2) / cfg.mu):
        try:
            symmetry.AxialShift.from_length(cfg, a)
        except NonAdmissibleTranslation as exc:
            print(f"a = {a:.4f}: rejected ({exc})")


if __name__ == "__main__":
    main()
