#!/usr/bin/env python3
"""Sweep the polarization weight lambda_2 and print the accepted windows.

    python3 scripts/window_sweep.py --grid 700
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from sextic_strata.kronecker import polarization_window_42


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid", type=int, default=700)
    args = ap.parse_args()

    rep = polarization_window_42(args.grid)
    g = rep.grid
    for name, ks in (
        ("six inequalities ", rep.six_accepted),
        ("refined system   ", rep.refined_accepted),
        ("open-stratum mu_2", rep.mu2_accepted),
    ):
        if not ks:
            print(f"{name}: empty")
            continue
        lo, hi = Fraction(ks[0], g), Fraction(ks[-1], g)
        print(f"{name}: {len(ks)} grid points, [{lo} .. {hi}] at denominator {g}")


if __name__ == "__main__":
    main()
