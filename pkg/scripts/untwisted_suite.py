#!/usr/bin/env python3
"""Untwisted axiom sweep on a lattice algebra; prints the check table and timing."""

import argparse
import time
from fractions import Fraction

from vtwist import cli


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--variant", default="VL")
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--q", type=int, default=1)
    ap.add_argument("--cutoff", default="4")
    ap.add_argument("--report", help="write the JSON-lines report here")
    a = ap.parse_args()
    cfg = cli.RunConfig(variant=cli.VARIANT_ALIASES.get(a.variant, a.variant), p=a.p, q=a.q,
                        cutoff=Fraction(a.cutoff), suite=["untwisted", "calibration"])
    cfg.validate()
    t0 = time.perf_counter()
    recs, passed = cli.run(cfg)
    text = cli.render(recs)
    if a.report:
        cli.emit(text, a.report)
    print("\n".join(l for l in text.splitlines() if l.startswith("#")))
    print(f"elapsed {time.perf_counter() - t0:.1f}s")
    return 0 if passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
