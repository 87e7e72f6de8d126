"""On-disk structure-constant and Delta caches.

One JSON-lines file per algebra configuration: a header record, then one
record per cached product u_n v (basis indices into the materialized order),
then one record per cached Delta(x)v.  Records are sorted so the file is
byte-identical however the memo was filled.
"""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .series import LogSeries
from .vector import Vec

FORMAT_VERSION = 1
COCYCLE = "trivial (non-L on non-L products truncated to zero)"
ENV_VAR = "VTWIST_CACHE_DIR"


def basis_order_hash(space) -> str:
    h = hashlib.sha256()
    for key in space.basis():
        h.update(str(key).encode())
        h.update(b"\n")
    return h.hexdigest()[:16]


def default_cache_dir() -> Optional[Path]:
    d = os.environ.get(ENV_VAR)
    return Path(d) if d else None


def cache_header(alg, twist_name: Optional[str] = None) -> dict:
    lat = alg.lattice
    return {
        "record": "header",
        "format_version": FORMAT_VERSION,
        "p": lat.p if lat.N is None else None,
        "q": lat.q if lat.N is None else None,
        "N": lat.N,
        "variant": alg.variant,
        "cutoff": str(alg.cutoff),
        "twist": twist_name,
        "cocycle": COCYCLE,
        "basis_order_hash": basis_order_hash(alg.space),
    }


def cache_filename(header: dict) -> str:
    digest = hashlib.sha256(json.dumps(header, sort_keys=True).encode()).hexdigest()[:12]
    return f"vtwist-{header['variant']}-{digest}.jsonl"


def _vec_record(v: Vec, index) -> list:
    return sorted([index[k], str(c)] for k, c in v.items())


def _vec_from(rec, basis) -> Vec:
    return Vec({basis[i]: Fraction(c) for i, c in rec})


def save(path: Path, alg, td=None, twist_name: Optional[str] = None):
    """Write the materialized part of the memo and Delta cache."""
    basis = alg.space.basis()
    index = {k: i for i, k in enumerate(basis)}
    lines = [json.dumps(cache_header(alg, twist_name), sort_keys=True)]
    recs = []
    for (a, n, b), out in alg._memo.items():
        if a not in index or b not in index or any(k not in index for k in out):
            continue
        recs.append([index[a], int(n), index[b], _vec_record(out, index)])
    recs.sort(key=lambda r: (r[0], r[1], r[2]))
    lines += [json.dumps({"record": "mode", "u": u, "n": n, "v": v, "out": o}) for u, n, v, o in recs]
    if td is not None:
        drecs = []
        for key, series in td.delta_cache.items():
            if key not in index:
                continue
            terms = sorted([str(e), lp, _vec_record(vec, index)] for (e, lp), vec in series.terms.items())
            drecs.append((index[key], terms))
        drecs.sort(key=lambda r: r[0])
        lines += [json.dumps({"record": "delta", "v": i, "terms": t}) for i, t in drecs]
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    tmp.replace(path)


def load(path: Path, alg, td=None, twist_name: Optional[str] = None) -> int:
    """Fill the memo (and Delta cache) from ``path``; returns records loaded, 0 on mismatch."""
    if not path.exists():
        return 0
    basis = alg.space.basis()
    with path.open() as fh:
        header = json.loads(fh.readline())
        if header != cache_header(alg, twist_name):
            return 0
        count = 0
        for line in fh:
            rec = json.loads(line)
            if rec["record"] == "mode":
                alg._memo[(basis[rec["u"]], rec["n"], basis[rec["v"]])] = _vec_from(rec["out"], basis)
            elif rec["record"] == "delta" and td is not None:
                s = LogSeries()
                for e, lp, vec in rec["terms"]:
                    s._add((Fraction(e), lp), _vec_from(vec, basis))
                td.delta_cache[basis[rec["v"]]] = s
            count += 1
    return count
