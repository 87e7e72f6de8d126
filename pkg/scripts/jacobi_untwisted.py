#!/usr/bin/env python3
"""Ordinary Jacobi identity (k = 1) by coefficient extraction on V_L.

At cutoff 3 this takes under a minute, which is too slow for the unit suite.
"""

import argparse
import time
from fractions import Fraction

from vtwist import voa
from vtwist.lattice import LatticeData, LatticeVOA


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cutoff", default="3")
    ap.add_argument("--variant", default="VL")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    alg = LatticeVOA(LatticeData(2, 1), args.variant, Fraction(args.cutoff))
    t0 = time.perf_counter()
    rep = voa.check_twisted_jacobi(alg, 1, lambda key: voa.Vec.basis(key), seed=args.seed)
    print(f"{rep.name} {rep.status}: {rep.stats} in {time.perf_counter() - t0:.1f}s")
    for w in rep.witnesses[:5]:
        print("  ", w)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
