#!/usr/bin/env python3
"""Run a config cold, cold with a fresh cache, then warm; compare the three reports byte for byte."""

import argparse
import sys
import tempfile
import time
from pathlib import Path

from vtwist import cli


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=str(Path(__file__).resolve().parent.parent / "configs" / "flagship.cfg"))
    args = ap.parse_args()
    with tempfile.TemporaryDirectory() as d:
        d = Path(d)
        blobs = []
        for name, extra in (("cold", []), ("cold-cache", ["--cache", str(d / "c")]),
                            ("warm", ["--cache", str(d / "c")])):
            t0 = time.perf_counter()
            rc = cli.main(["check", "--config", args.config, "--report", str(d / name), *extra])
            blobs.append((d / name).read_bytes())
            print(f"{name:<10} exit {rc}  {time.perf_counter() - t0:.1f}s  {len(blobs[-1])} bytes")
        same = blobs[0] == blobs[1] == blobs[2]
        print("reports identical" if same else "reports DIFFER")
        sys.stdout.write("".join(l + "\n" for l in blobs[0].decode().splitlines() if l.startswith("#")))
    return 0 if same else 1


if __name__ == "__main__":
    raise SystemExit(main())
