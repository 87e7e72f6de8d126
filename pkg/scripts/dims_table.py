#!/usr/bin/env python3
"""Block dimensions of the lattice algebras, checked against the enumeration oracle.

With --twist the regraded (n, alpha) dimensions of the twisted module are shown too.
"""

import argparse
from fractions import Fraction

from vtwist.cli import VARIANT_ALIASES, parse_twist
from vtwist.lattice import LatticeData, LatticeVOA, dimension_oracle
from vtwist.scalar import coefficient_text
from vtwist.vector import Vec
from vtwist import twist as tw


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pq", nargs="*", default=["2,1", "3,1", "3,2"])
    ap.add_argument("--variant", default="Vpq")
    ap.add_argument("--cutoff", default="4")
    ap.add_argument("--twist", default="none")
    args = ap.parse_args()
    variant = VARIANT_ALIASES.get(args.variant, args.variant)
    cutoff = Fraction(args.cutoff)
    ok = True
    for pq in args.pq:
        p, q = map(int, pq.split(","))
        lat = LatticeData(p, q)
        alg = LatticeVOA(lat, variant, cutoff)
        got = {w: alg.space.dim(w) for w in alg.space.weights()}
        same = got == dimension_oracle(lat, variant, cutoff)
        ok &= same
        row = "  ".join(f"{coefficient_text(w)}:{d}" for w, d in sorted(got.items()))
        print(f"({p},{q}) {variant}: {row}  oracle {'match' if same else 'MISMATCH'}")
        kind, _ = parse_twist(args.twist)
        if kind in ("Q", "Qtilde"):
            td = tw.TwistData(alg, Vec.basis(alg.screening_generator(kind)), cutoff=cutoff)
            dims = tw.regrade(td).dims()
            print("   regraded: " + "  ".join(f"({coefficient_text(n)},{coefficient_text(a)}):{d}"
                                          for (n, a), d in sorted(dims.items())))
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
