"""Command-line front end: build caches, run check suites, dump dimension tables.

Exit codes: 0 when every selected check passes, 1 when any fails, 2 on a
usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional

from . import __version__, cache
from .errors import ConfigError, VTwistError
from .lattice import (LatticeData, LatticeVOA, VARIANTS, check_calibration, check_dimensions,
                      check_screening_facts)
from .scalar import coefficient_text
from .vector import Vec
from . import twist as tw
from . import voa

VARIANT_ALIASES = {
    "V(p,q)": "Vpq", "Vpq": "Vpq",
    "V_L": "VL", "VL": "VL",
    "V_L-standard": "VL-standard", "VL-standard": "VL-standard", "V_L-standard-omega": "VL-standard",
    "V0": "V0", "V0o": "V0o",
}

UNTWISTED = ["identity", "creation", "derivative", "skew-symmetry", "commutator", "virasoro",
             "weak-commutativity"]
DELTA = ["twist-prerequisites", "delta-examples", "delta-commutator", "delta-L(-1)-integral",
         "delta-conjugation", "delta-L(-1)-bracket"]
TWISTED = ["twisted-virasoro-zero", "twisted-identity", "twisted-L(-1)-derivative", "equivariance",
           "twisted-grading", "log-presence", "functoriality", "duality-certificate"]
FINITE_ORDER = ["formal-monodromy", "twisted-jacobi", "twisted-weak-associativity"]
GROUPS = {"untwisted": UNTWISTED, "delta": DELTA, "twisted": TWISTED, "finite-order": FINITE_ORDER,
          "lattice": ["calibration", "screening-facts", "dimensions"]}
ALL_CHECKS = [c for g in GROUPS.values() for c in g] + ["weak-associativity"]


@dataclass
class RunConfig:
    variant: str = "Vpq"
    p: int = 2
    q: int = 1
    N: Optional[int] = None
    cutoff: Fraction = Fraction(3)
    twist: str = "none"
    suite: List[str] = field(default_factory=lambda: ["all"])
    seed: int = 0
    cache: Optional[str] = None
    report: Optional[str] = None
    v: Optional[str] = None
    w: Optional[str] = None

    def validate(self):
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant {self.variant!r}; choose from {sorted(VARIANT_ALIASES)}")
        if self.cutoff < 0:
            raise ConfigError("cutoff must be >= 0")
        parse_twist(self.twist)
        for s in self.suite:
            if s != "all" and s not in GROUPS and s not in ALL_CHECKS:
                raise ConfigError(f"unknown suite entry {s!r}")
        self.lattice()

    def lattice(self) -> LatticeData:
        if self.N is not None:
            return LatticeData(N=self.N)
        return LatticeData(self.p, self.q)

    def echo(self) -> dict:
        d = asdict(self)
        d["cutoff"] = str(self.cutoff)
        d.pop("report")
        d.pop("cache")
        return d


def parse_twist(name: str):
    """('none'|'Q'|'Qtilde'|'heisenberg', coefficient)."""
    if name in ("none", "", None):
        return "none", None
    if name in ("Q-screen", "Q"):
        return "Q", None
    if name in ("Qtilde-screen", "Qtilde"):
        return "Qtilde", None
    m = re.fullmatch(r"heisenberg\(([^)]+)\)", name)
    if m:
        try:
            return "heisenberg", Fraction(m.group(1))
        except ValueError:
            pass
    raise ConfigError(f"unknown twist {name!r}; use none, Q-screen, Qtilde-screen or heisenberg(a)")


def _coerce(name: str, raw: str):
    if name in ("p", "q", "seed"):
        return int(raw)
    if name == "N":
        return None if raw.lower() in ("none", "") else int(raw)
    if name == "cutoff":
        return Fraction(raw)
    if name == "suite":
        return [s.strip() for s in raw.split(",") if s.strip()]
    if name == "variant":
        if raw not in VARIANT_ALIASES:
            raise ConfigError(f"unknown variant {raw!r}")
        return VARIANT_ALIASES[raw]
    return raw


def read_config_file(path: str) -> Dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    known = {f.name for f in fields(RunConfig)}
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        k, v = (s.strip() for s in line.split("=", 1))
        if k not in known:
            raise ConfigError(f"{path}:{lineno}: unknown key {k!r}")
        out[k] = v
    return out


def build_config(args) -> RunConfig:
    raw: Dict[str, str] = read_config_file(args.config) if args.config else {}
    for f in fields(RunConfig):
        val = getattr(args, f.name, None)
        if val is not None:
            raw[f.name] = val
    cfg = RunConfig()
    try:
        for k, v in raw.items():
            setattr(cfg, k, _coerce(k, v))
    except ValueError as exc:
        raise ConfigError(f"bad value: {exc}") from exc
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# running


class Session:
    """Algebra, optional twist data and cache handling for one config."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.alg = LatticeVOA(cfg.lattice(), cfg.variant, cfg.cutoff)
        self.kind, self.coef = parse_twist(cfg.twist)
        self.td: Optional[tw.TwistData] = None
        self.twist_error: Optional[VTwistError] = None
        if self.kind != "none":
            try:
                self.td = tw.TwistData(self.alg, self.twist_vector(), cutoff=cfg.cutoff)
            except VTwistError as exc:
                self.twist_error = exc
        self.cache_path = self._cache_path()
        self.loaded = cache.load(self.cache_path, self.alg, self.td, cfg.twist) if self.cache_path else 0

    def twist_vector(self) -> Vec:
        if self.kind == "heisenberg":
            return self.alg.gamma_vec(1).scale(self.coef)
        return Vec.basis(self.alg.screening_generator(self.kind))

    def _cache_path(self) -> Optional[Path]:
        d = Path(self.cfg.cache) if self.cfg.cache else cache.default_cache_dir()
        if d is None:
            return None
        return d / cache.cache_filename(cache.cache_header(self.alg, self.cfg.twist))

    def save_cache(self):
        if self.cache_path:
            cache.save(self.cache_path, self.alg, self.td, self.cfg.twist)


def selected_checks(cfg: RunConfig, sess: Session) -> List[str]:
    names: List[str] = []
    for s in cfg.suite:
        if s == "all":
            if sess.kind == "none":
                names += ["calibration", "dimensions"] + UNTWISTED
            else:
                names += ["dimensions"] + DELTA + TWISTED
                if sess.kind in ("Q", "Qtilde"):
                    names = ["screening-facts"] + names
                if sess.td is not None and sess.td.order() is not None:
                    names += FINITE_ORDER
        elif s in GROUPS:
            names += GROUPS[s]
        else:
            names.append(s)
    seen = set()
    return [n for n in names if not (n in seen or seen.add(n))]


def _duality_certificate(reports: Dict[str, voa.AxiomReport]) -> voa.AxiomReport:
    rep = voa.AxiomReport("duality-certificate", {})
    needed = ["delta-conjugation", "untwisted-weak-commutativity"]
    rep.data["argument"] = ("duality of the twisted map follows from untwisted duality and the "
                            "conjugation identity for Delta; both are certified by the records named here")
    rep.data["depends_on"] = needed
    for n in needed:
        r = reports.get(n)
        rep.count()
        if r is None or not r.passed:
            rep.fail(missing_or_failed=n)
    return rep


def run_check(name: str, sess: Session, reports: Dict[str, voa.AxiomReport]) -> voa.AxiomReport:
    alg, td, cfg = sess.alg, sess.td, sess.cfg
    untw: Dict[str, Callable] = {
        "identity": lambda: voa.check_identity(alg),
        "creation": lambda: voa.check_creation(alg),
        "derivative": lambda: voa.check_derivative(alg),
        "skew-symmetry": lambda: voa.check_skew_symmetry(alg),
        "commutator": lambda: voa.check_commutator_formula(alg, seed=cfg.seed),
        "virasoro": lambda: voa.check_virasoro(alg),
        "weak-commutativity": lambda: voa.check_weak_commutativity(alg, seed=cfg.seed),
        "weak-associativity": lambda: voa.check_weak_associativity(alg, seed=cfg.seed),
        "calibration": lambda: _calibration(alg),
        "dimensions": lambda: check_dimensions(alg),
        "screening-facts": lambda: check_screening_facts(alg, sess.kind if sess.kind != "none" else "Q"),
    }
    if name in untw:
        return untw[name]()
    if td is None:
        rep = voa.AxiomReport(name, {"twist": cfg.twist})
        rep.fail(reason=str(sess.twist_error) if sess.twist_error else "no twist selected")
        return rep
    mod = tw.TwistedModule(td)
    twisted: Dict[str, Callable] = {
        "twist-prerequisites": lambda: tw.check_delta_structure(td),
        "delta-examples": lambda: tw.check_delta_examples(td),
        "delta-commutator": lambda: tw.check_delta_commutator(td),
        "delta-L(-1)-integral": lambda: tw.check_delta_L_minus1(td),
        "delta-conjugation": lambda: tw.check_delta_conjugation(td),
        "delta-L(-1)-bracket": lambda: tw.check_L_minus1_bracket(td),
        "twisted-virasoro-zero": lambda: tw.check_twisted_virasoro_zero(td),
        "twisted-identity": lambda: tw.check_identity_twisted(td),
        "twisted-L(-1)-derivative": lambda: tw.check_twisted_derivative(td),
        "equivariance": lambda: tw.check_equivariance(td),
        "twisted-grading": lambda: tw.check_grading(td),
        "log-presence": lambda: tw.check_log_presence(td),
        "functoriality": lambda: tw.check_functoriality(td),
        "formal-monodromy": lambda: tw.check_formal_monodromy(td),
        "twisted-jacobi": lambda: voa.check_twisted_jacobi(mod, td.order() or 1, tw.automorphism_g(td, -1),
                                                          seed=cfg.seed, cutoff=td.cutoff),
        "twisted-weak-associativity": lambda: _renamed(
            voa.check_weak_associativity(mod, cutoff=td.cutoff, seed=cfg.seed), "twisted-weak-associativity"),
    }
    if name == "duality-certificate":
        if "untwisted-weak-commutativity" not in reports:
            reports["untwisted-weak-commutativity"] = _renamed(
                voa.check_weak_commutativity(alg, cutoff=td.cutoff, seed=cfg.seed), "untwisted-weak-commutativity")
        return _duality_certificate(reports)
    try:
        return twisted[name]()
    except VTwistError as exc:
        rep = voa.AxiomReport(name, {})
        rep.fail(reason=f"{type(exc).__name__}: {exc}")
        return rep


def _renamed(rep: voa.AxiomReport, name: str) -> voa.AxiomReport:
    rep.name = name
    return rep


def _calibration(alg):
    rep = check_calibration(alg)
    vir = voa.check_virasoro(alg)
    rep.count(vir.stats["checked"])
    if not vir.passed:
        rep.fail(reason="virasoro bracket", witnesses=vir.witnesses)
    return rep


def header_record(cfg: RunConfig, sess: Session) -> dict:
    return {
        "record": "header",
        "tool": "vtwist",
        "version": __version__,
        "config": cfg.echo(),
        "cocycle": cache.COCYCLE,
        "basis_order_hash": cache.basis_order_hash(sess.alg.space),
        "sample_threshold": voa.SAMPLE_THRESHOLD,
    }


def twist_record(sess: Session) -> Optional[dict]:
    td = sess.td
    if td is None:
        return None
    ev = {str(w): [[coefficient_text(lam), m] for lam, m in lst] for w, lst in sorted(td.jc.eigenvalues.items())}
    nil = {str(w): k for w, k in sorted(td.jc.nilpotency_index.items())}
    return {"record": "twist", "u": td.u.to_text(), "mu": coefficient_text(td.mu), "order": td.order(),
            "zero_mode_eigenvalues": ev, "nilpotency_index": nil}


def run(cfg: RunConfig, out=None):
    """Run the selected checks; returns (records, passed)."""
    sess = Session(cfg)
    records = [header_record(cfg, sess)]
    dims = {str(w): sess.alg.space.dim(w) for w in sess.alg.space.weights()}
    records.append({"record": "dimensions", "blocks": dims})
    trec = twist_record(sess)
    if trec:
        records.append(trec)
    reports: Dict[str, voa.AxiomReport] = {}
    for name in selected_checks(cfg, sess):
        reports[name] = run_check(name, sess, reports)
    ordered = sorted(reports.values(), key=lambda r: r.name)
    for r in ordered:
        rec = r.to_record()
        rec["record"] = "check"
        records.append(rec)
    passed = all(r.passed for r in ordered) and sess.twist_error is None
    records.append({"record": "summary", "status": "pass" if passed else "fail",
                    "checks": len(ordered), "failed": sorted(r.name for r in ordered if not r.passed)})
    sess.save_cache()
    return records, passed


def render(records: List[dict]) -> str:
    lines = [json.dumps(r, sort_keys=True, separators=(",", ":")) for r in records]
    summary = records[-1]
    lines.append(f"# {summary['status'].upper()}: {summary['checks']} checks, {len(summary['failed'])} failed")
    for r in records:
        if r.get("record") == "check":
            lines.append(f"#   {r['status']:<9} {r['check']} ({r['stats']['checked']} checked)")
    return "\n".join(lines) + "\n"


def emit(text: str, path: Optional[str]):
    if path:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_check(cfg: RunConfig) -> int:
    records, passed = run(cfg)
    emit(render(records), cfg.report)
    return 0 if passed else 1


def cmd_build(cfg: RunConfig) -> int:
    sess = Session(cfg)
    if sess.td is not None:
        for key in sess.alg.space.basis():
            if sess.alg.weight(key) <= cfg.cutoff:
                tw.delta_apply(sess.td, Vec.basis(key))
    if sess.cache_path is None:
        print("no cache path: pass --cache or set " + cache.ENV_VAR, file=sys.stderr)
        return 2
    sess.save_cache()
    print(f"wrote {sess.cache_path} ({sess.alg.memo_size()} products, loaded {sess.loaded} records)")
    return 0


def cmd_dims(cfg: RunConfig) -> int:
    sess = Session(cfg)
    rec = {"record": "dimensions", "before": {str(w): sess.alg.space.dim(w) for w in sess.alg.space.weights()}}
    if sess.td is not None:
        view = tw.regrade(sess.td)
        rec["after"] = {f"({coefficient_text(n)},{coefficient_text(a)})": d for (n, a), d in view.dims().items()}
    emit(json.dumps(rec, sort_keys=True) + "\n", cfg.report)
    return 0


def _lookup(sess: Session, name: Optional[str]) -> Vec:
    if name is None:
        raise ConfigError("twist subcommand needs --v and --w")
    if name == "omega":
        return sess.alg.conformal
    if name == "u" and sess.td is not None:
        return sess.td.u
    for key in sess.alg.space.basis():
        if str(key) == name:
            return Vec.basis(key)
    raise ConfigError(f"no basis element named {name!r}")


def cmd_twist(cfg: RunConfig) -> int:
    sess = Session(cfg)
    if sess.td is None:
        raise ConfigError("twist subcommand needs --twist")
    v, w = _lookup(sess, cfg.v), _lookup(sess, cfg.w)
    rows = tw.twisted_coefficient_table(sess.td, v, w)
    emit("".join(json.dumps(r, sort_keys=True) + "\n" for r in rows), cfg.report)
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vtwist", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("build", "check", "dims", "twist"):
        sp = sub.add_parser(name)
        sp.add_argument("--config")
        sp.add_argument("--cutoff")
        sp.add_argument("--suite")
        sp.add_argument("--seed")
        sp.add_argument("--cache")
        sp.add_argument("--report")
        sp.add_argument("--variant")
        sp.add_argument("--p")
        sp.add_argument("--q")
        sp.add_argument("--N")
        sp.add_argument("--twist")
        if name == "twist":
            sp.add_argument("--v")
            sp.add_argument("--w")
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        return {"build": cmd_build, "check": cmd_check, "dims": cmd_dims, "twist": cmd_twist}[args.command](cfg)
    except ConfigError as exc:
        print(f"vtwist: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
