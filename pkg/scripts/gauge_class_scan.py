"""Winding-loop holonomy as zeta sweeps through one period hbar/e.

    python scripts/gauge_class_scan.py [--steps 9]

Potentials with zeta and zeta + hbar/e give identical holonomies on every
loop; contractible loops see only the flux and never the class.
"""
import argparse

import numpy as np

from cylinder_landau import gauge
from cylinder_landau.core import new_config


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--steps", type=int, default=9)
    p.add_argument("--B", type=float, default=1.0)
    args = p.parse_args()

    cfg = new_config(B=args.B)
    circle = gauge.circle_loop(0.0, 1)
    rect = gauge.rectangle_loop(0.0, 0.0, 1.0, 1.0)
    bump = [gauge.LambdaTerm(0.8, 2, "sin", (1.0, -0.4), 0.2, 0.7)]
    print(f"{'zeta':>7} {'arg h(circle)':>14} {'arg h(rect)':>12} {'same class as zeta+1':>21}")
    for zeta in np.linspace(0.0, cfg.hbar / cfg.e, args.steps):
        A = gauge.make_potential(cfg, zeta, bump)
        A_next = gauge.make_potential(cfg, zeta + cfg.hbar / cfg.e)
        eq, _ = gauge.holonomically_equivalent(A, A_next)
        print(f"{zeta:>7.3f} {np.angle(gauge.holonomy(A, circle)):>14.6f} "
              f"{np.angle(gauge.holonomy(A, rect)):>12.6f} {str(eq):>21}")


if __name__ == "__main__":
    main()
