"""Acceptance criteria 1-9.  Each test records one PASS/FAIL line, printed in the
terminal summary under "acceptance criteria".  Everything is compared exactly.

Runtime is dominated by criterion 1 (about two minutes) and the three
flagship runs of criterion 8.
"""

import json
import time
from fractions import Fraction as F

import pytest

from vtwist import cli, twist as tw, voa
from vtwist.lattice import (LatticeData, LatticeVOA, check_calibration, check_dimensions,
                            check_screening_facts, dimension_oracle)
from vtwist.series import LogSeries
from vtwist.vector import Vec

FLAGSHIP = "configs/flagship.cfg"
pytestmark = pytest.mark.acceptance


@pytest.fixture(scope="module")
def vpq4():
    return LatticeVOA(LatticeData(2, 1), "Vpq", 4)


@pytest.fixture(scope="module")
def q3():
    alg = LatticeVOA(LatticeData(2, 1), "Vpq", 3)
    return tw.TwistData(alg, Vec.basis(alg.screening_generator("Q")), cutoff=3)


@pytest.fixture(scope="module")
def heis52():
    alg = LatticeVOA(LatticeData(N=1), "VL-standard", F(5, 2))
    return tw.TwistData(alg, alg.gamma_vec(1).scale(F(1, 4)), cutoff=F(5, 2))


@pytest.fixture(scope="module")
def flagship_reports(tmp_path_factory):
    import os
    saved = os.environ.pop("VTWIST_CACHE_DIR", None)
    try:
        d = tmp_path_factory.mktemp("flagship")
        out = []
        for name, cache_dir in (("cold", None), ("cold-cache", d / "cache"), ("warm", d / "cache")):
            argv = ["check", "--config", FLAGSHIP, "--report", str(d / name)]
            if cache_dir is not None:
                argv += ["--cache", str(cache_dir)]
            rc = cli.main(argv)
            out.append((rc, (d / name).read_bytes()))
        cache_files = sorted((d / "cache").iterdir())
        return out, cache_files
    finally:
        if saved is not None:
            os.environ["VTWIST_CACHE_DIR"] = saved


def records(blob: bytes):
    return [json.loads(l) for l in blob.decode().splitlines() if not l.startswith("#")]


def test_criterion_1_untwisted_suite(criterion):
    with criterion(1, "untwisted axioms on V_L(2,1), shifted omega, cutoff 4") as note:
        t0 = time.perf_counter()
        cfg = cli.RunConfig(variant="VL", p=2, q=1, cutoff=F(4), suite=["untwisted"])
        recs, passed = cli.run(cfg)
        elapsed = time.perf_counter() - t0
        checks = {r["check"]: r for r in recs if r["record"] == "check"}
        assert set(checks) == {"identity", "creation", "L(-1)-derivative", "skew-symmetry",
                               "commutator-formula", "virasoro-bracket", "weak-commutativity"}
        for name, r in checks.items():
            assert r["status"] == "pass", (name, r["witnesses"][:3])
            assert r["stats"]["checked"] > 0
        assert passed
        N = checks["weak-commutativity"]["data"]["N"]
        assert N["1|g(-1)"] == 0 and N["g(-1)|g(-1)"] == 2
        assert elapsed < 300
        note["detail"] = f"{len(checks)} checks, {len(N)} N values recorded, {elapsed:.0f}s"


def test_criterion_2_calibration(criterion, vpq4):
    with criterion(2, "conformal calibration of the shifted conformal vector") as note:
        cal = check_calibration(vpq4)
        assert cal.passed, cal.witnesses
        for which in ("Q", "Qtilde"):
            key = vpq4.screening_generator(which)
            assert vpq4.weight(key) == 1
            v = Vec.basis(key)
            assert vpq4.virasoro_mode(1).apply(v) == Vec()
            assert vpq4.virasoro_mode(0).apply(v) == v
        vir = voa.check_virasoro(vpq4)
        assert vir.passed and vir.stats["checked"] > 0
        c = cal.data["central_charge"]
        assert F(c) == -2
        note["detail"] = f"c = {c}, {vir.stats['checked']} bracket blocks"


def test_criterion_3_screening_facts(criterion, vpq4):
    with criterion(3, "screening operator facts on V(2,1), cutoff 4") as note:
        rep = check_screening_facts(vpq4, "Q")
        assert rep.passed, rep.witnesses
        assert rep.data["mu"] == 0 or str(rep.data["mu"]) == "0"
        q = vpq4.screening("Q")
        assert q.compose(q).is_zero()
        note["detail"] = f"Q rank by block {rep.data['Q_rank_by_block']}"


@pytest.mark.parametrize("name", ["delta-commutator", "delta-L(-1)-integral",
                                  "delta-conjugation", "delta-L(-1)-bracket"])
def test_delta_identity_cutoff3(q3, name):
    fn = {"delta-commutator": tw.check_delta_commutator, "delta-L(-1)-integral": tw.check_delta_L_minus1,
          "delta-conjugation": tw.check_delta_conjugation,
          "delta-L(-1)-bracket": tw.check_L_minus1_bracket}[name]
    rep = fn(q3)
    assert rep.passed, rep.witnesses[:3]
    assert rep.stats["checked"] > 0 and rep.stats.get("truncated", 0) == 0


def test_criterion_4_delta_identities(criterion, q3):
    with criterion(4, "Delta identities, full basis sweep at cutoff 3") as note:
        reps = [tw.check_delta_commutator(q3), tw.check_delta_L_minus1(q3),
                tw.check_delta_conjugation(q3), tw.check_L_minus1_bracket(q3)]
        for r in reps:
            assert r.passed, (r.name, r.witnesses[:3])
        conj = reps[2]
        assert conj.data["coefficients_with_logs"] > 0
        note["detail"] = ", ".join(f"{r.name} {r.stats['checked']}" for r in reps)


def test_criterion_5_twisted_virasoro(criterion, q3):
    with criterion(5, "twisted conformal vector: integral powers, no logs, L^(u)(0) block matrices") as note:
        alg = q3.alg
        assert q3.mu == 0
        rep = tw.check_twisted_virasoro_zero(q3)
        assert rep.passed, rep.witnesses[:3]
        # Delta(x) omega = omega + u x^-1 (mu = 0 so the x^-2 term is absent)
        assert tw.delta_apply(q3, alg.conformal) == LogSeries({(0, 0): alg.conformal, (-1, 0): q3.u})
        lu0 = tw._twisted_omega_zero(q3)
        expect = alg.virasoro_mode(0) + q3.zero_mode
        for wt in alg.space.weights():
            if wt <= 3:
                assert lu0.blocks[wt] == expect.blocks[wt]
        note["detail"] = f"{rep.stats['checked']} checks"


def test_criterion_6_flagship_certificate(criterion, flagship_reports):
    with criterion(6, "twisted-module certificate for the Q-screen twist on V(2,1), cutoff 3") as note:
        (rc, blob), _, _ = flagship_reports[0]
        assert rc == 0
        recs = records(blob)
        checks = {r["check"]: r for r in recs if r["record"] == "check"}
        for name in ["twisted-identity", "twisted-L(-1)-derivative", "equivariance", "twisted-grading",
                     "delta-conjugation", "duality-certificate", "log-presence"]:
            assert checks[name]["status"] == "pass", name
        assert checks["equivariance"]["data"]["pairs_with_tau_terms"] > 0
        grading = checks["twisted-grading"]["data"]
        assert grading["Lambda_max"] == 2
        assert all(grading["Lambda"][b] == 2 for b in ("(1,0)", "(2,0)", "(3,0)"))
        logs = checks["log-presence"]["data"]
        assert logs["log_terms_found"] and "log(x)^1" in logs["example_delta"]
        assert recs[-1]["status"] == "pass"
        note["detail"] = f"{recs[-1]['checks']} checks; log example Delta {logs['example_v']} = {logs['example_delta']}"


def test_criterion_7_finite_order(criterion, heis52):
    with criterion(7, "finite-order reduction, <g,g> = 2, u = g(-1)/4, cutoff 5/2") as note:
        td = heis52
        assert td.order() == 2 and td.nilpotent_free
        mod = tw.TwistedModule(td)
        jac = voa.check_twisted_jacobi(mod, 2, tw.automorphism_g(td, -1), cutoff=F(5, 2))
        assert jac.passed and jac.stats["checked"] > 0, jac.witnesses[:3]
        # formal monodromy and equivariance agree along g^t
        agree = [(tw.check_formal_monodromy(td, t=t).passed, tw.check_equivariance(td, t=t).passed)
                 for t in (1, 2, 3)]
        assert agree == [(True, True), (False, False), (True, True)]
        note["detail"] = f"Jacobi {jac.stats['checked']} coefficients; (monodromy, equivariance) for t=1,2,3: {agree}"


def test_criterion_8_determinism(criterion, flagship_reports):
    with criterion(8, "two cold runs and one warm run give byte-identical reports") as note:
        runs, cache_files = flagship_reports
        assert [rc for rc, _ in runs] == [0, 0, 0]
        assert runs[0][1] == runs[1][1] == runs[2][1]
        assert len(cache_files) == 1 and cache_files[0].stat().st_size > 0
        note["detail"] = f"{len(runs[0][1])} bytes each, cache {cache_files[0].name}"


def test_criterion_9_dimensions(criterion, vpq4):
    with criterion(9, "dimension tables of V(2,1) to cutoff 4 against partition/coset enumeration") as note:
        rep = check_dimensions(vpq4)
        assert rep.passed, rep.witnesses
        dims = {w: vpq4.space.dim(w) for w in vpq4.space.weights()}
        assert dims == dimension_oracle(LatticeData(2, 1), "Vpq", 4)
        assert dims == {0: 3, 1: 6, 2: 9, 3: 18, 4: 27}
        note["detail"] = str({str(k): v for k, v in dims.items()})
