#!/usr/bin/env python3
"""Finite-order case: u = a*gamma(-1) on the rank-one lattice with standard omega.

Runs the twisted Jacobi identity, formal monodromy against equivariance along
g^t, and twisted weak associativity.  The default a = 1/4 gives g of order 2.
"""

import argparse
import time
from fractions import Fraction

from vtwist import twist as tw, voa
from vtwist.lattice import LatticeData, LatticeVOA


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=1, help="<gamma,gamma> = 2N")
    ap.add_argument("--a", default="1/4")
    ap.add_argument("--cutoff", default="5/2")
    args = ap.parse_args()
    cutoff, a = Fraction(args.cutoff), Fraction(args.a)
    alg = LatticeVOA(LatticeData(N=args.N), "VL-standard", cutoff)
    td = tw.TwistData(alg, alg.gamma_vec(1).scale(a), cutoff=cutoff)
    k = td.order()
    print(f"mu = {td.mu}, order of g = {k}")
    mod = tw.TwistedModule(td)
    ok = True
    t0 = time.perf_counter()
    for rep in (voa.check_twisted_jacobi(mod, k, tw.automorphism_g(td, -1), cutoff=cutoff),
                voa.check_weak_associativity(mod, cutoff=cutoff),
                tw.check_grading(td)):
        print(f"{rep.name:<28} {rep.status:<5} {rep.stats['checked']} checked")
        ok &= rep.passed
    for t in range(1, k + 2):
        fm, eq = tw.check_formal_monodromy(td, t=t).passed, tw.check_equivariance(td, t=t).passed
        print(f"g^{t}: formal monodromy {fm}, equivariance {eq}")
        ok &= fm == eq
    print(f"elapsed {time.perf_counter() - t0:.1f}s")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
