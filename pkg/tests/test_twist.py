from fractions import Fraction as F
from types import SimpleNamespace

import pytest
from hypothesis import given, settings, strategies as st

from vtwist.errors import NotProportional, VTwistError
from vtwist.lattice import FockBasisElement, LatticeData, LatticeVOA
from vtwist.scalar import Scalar, root_of_unity
from vtwist.series import LogSeries
from vtwist.vector import Vec
from vtwist import twist as tw
from vtwist import voa


def vpq(cutoff=2):
    return LatticeVOA(LatticeData(2, 1), "Vpq", cutoff)


def q_twist(cutoff=2, which="Q"):
    alg = vpq(cutoff)
    return tw.TwistData(alg, Vec.basis(alg.screening_generator(which)), cutoff=cutoff)


def heis_twist(a=F(1, 4), N=1, cutoff=F(3, 2)):
    alg = LatticeVOA(LatticeData(N=N), "VL-standard", cutoff)
    return tw.TwistData(alg, alg.gamma_vec(1).scale(a), cutoff=cutoff)


QT = q_twist(2)
QT_TILDE = q_twist(2, "Qtilde")
HT = heis_twist()


def test_mu_examples():
    assert QT.mu == 0
    assert QT_TILDE.mu == 0
    for a in (F(1, 4), F(2, 3), F(-1)):
        td = heis_twist(a, N=2, cutoff=1)
        assert td.mu == a * a * 4


def test_mu_not_proportional():
    one = "1"
    fake = SimpleNamespace(alg=SimpleNamespace(mode=lambda u, n, v: Vec({"x": F(1)}), vacuum_key=one),
                           u=Vec.basis("u"))
    with pytest.raises(NotProportional):
        tw.compute_mu(fake)


def test_u_requirements():
    alg = LatticeVOA(LatticeData(2, 1), "VL", 2)
    with pytest.raises(VTwistError, match="L\\(1\\)u"):
        tw.TwistData(alg, alg.gamma_vec(1))
    with pytest.raises(VTwistError, match="weight 1"):
        tw.TwistData(alg, alg.gamma_vec(2))


def test_delta_examples_q():
    alg, td = QT.alg, QT
    assert tw.delta_apply(td, alg.vacuum()) == LogSeries({(0, 0): alg.vacuum()})
    assert tw.delta_apply(td, td.u) == LogSeries({(0, 0): td.u})
    assert tw.delta_apply(td, alg.conformal) == LogSeries({(0, 0): alg.conformal, (-1, 0): td.u})
    assert tw.check_delta_examples(td).passed


def test_delta_heisenberg_closed_form():
    # u = a gamma(-1): Delta e^{m gamma} = x^{a m <g,g>} e^{m gamma},
    # Delta gamma(-1) = gamma(-1) + a <g,g> x^{-1} 1  (Heisenberg bracket oracle)
    td, alg = HT, HT.alg
    a, norm = F(1, 4), 2
    for m in (-1, 0, 1):
        e = Vec.basis(alg.e(m))
        assert tw.delta_apply(td, e) == LogSeries({(a * m * norm, 0): e})
    g1 = alg.gamma_vec(1)
    assert tw.delta_apply(td, g1) == LogSeries({(0, 0): g1, (-1, 0): alg.vacuum().scale(a * norm)})
    expect = LogSeries({(0, 0): alg.conformal, (-1, 0): td.u, (-2, 0): alg.vacuum().scale(td.mu / 2)})
    assert tw.delta_apply(td, alg.conformal) == expect


def test_regrade_matches_heisenberg_shift():
    # L^{(u)}(0) = L(0) + u(0) + <u,u>/2 for a Heisenberg element
    view = tw.regrade(HT)
    for key, (n, a) in view.index.items():
        assert a == F(1, 4) * key.point * 2
        assert n == HT.alg.weight(key) + a + F(1, 16)
        assert view.original_block(n, a) == HT.alg.weight(key)
    q = tw.regrade(QT)
    assert all(n == QT.alg.weight(k) and a == 0 for k, (n, a) in q.index.items())


def test_order():
    assert HT.order() == 2
    assert QT.order() is None
    assert heis_twist(F(1, 3), N=1, cutoff=1).order() == 3


@pytest.mark.parametrize("td", [QT, QT_TILDE, HT], ids=["Q", "Qtilde", "heisenberg"])
def test_twisted_suite(td):
    checks = [tw.check_delta_structure, tw.check_delta_examples, tw.check_delta_commutator, tw.check_delta_L_minus1,
              tw.check_delta_conjugation, tw.check_L_minus1_bracket, tw.check_log_presence,
              tw.check_twisted_virasoro_zero, tw.check_identity_twisted, tw.check_twisted_derivative,
              tw.check_equivariance, tw.check_grading, tw.check_functoriality]
    for chk in checks:
        rep = chk(td)
        assert rep.passed, (rep.name, rep.witnesses)
        assert rep.stats["checked"] > 0


def test_log_presence_q():
    rep = tw.check_log_presence(QT)
    assert rep.data["log_terms_found"]
    assert tw.check_log_presence(HT).data["log_terms_found"] is False


def test_lambda_two_where_q_acts():
    rep = tw.check_grading(QT)
    q = QT.alg.screening("Q")
    for key, lam in rep.data["Lambda"].items():
        w = F(key.strip("()").split(",")[0])
        acts = not all(not x for row in q.blocks[w] for x in row)
        assert lam == (2 if acts else 1)


def test_equivariance_negative_control():
    assert not tw.check_equivariance(QT, t=2).passed
    # g has order 2 here, so t=3 is g again and must pass
    assert not tw.check_equivariance(HT, t=2).passed
    assert tw.check_equivariance(HT, t=3).passed


def test_heisenberg_finite_order_checks():
    mod = tw.TwistedModule(HT)
    assert tw.check_formal_monodromy(HT).passed
    gp = tw.automorphism_g(HT, -1)
    assert voa.check_twisted_jacobi(mod, 2, gp, cutoff=F(3, 2)).passed
    assert not voa.check_twisted_jacobi(mod, 2, lambda k: Vec.basis(k), cutoff=F(3, 2)).passed
    assert voa.check_weak_associativity(mod, cutoff=F(3, 2)).passed
    rep = voa.check_weak_commutativity(mod, cutoff=F(3, 2))
    assert rep.passed


def test_log_module_rejects_finite_order_checks():
    from vtwist.errors import RequiresFiniteOrder
    mod = tw.TwistedModule(QT)
    with pytest.raises(RequiresFiniteOrder):
        voa.check_twisted_jacobi(mod, 1, lambda k: Vec.basis(k))
    assert not tw.check_formal_monodromy(QT).passed


def test_offsets_heisenberg():
    mod = tw.TwistedModule(HT)
    alg = HT.alg
    assert mod.offset(alg.e(1).__class__("L", F(1), ())) == F(1, 2)
    assert mod.offset(alg.vacuum_key) == 0


basis_q = sorted(QT.alg.space.basis())


@settings(max_examples=30)
@given(st.sampled_from(basis_q), st.sampled_from(basis_q), st.integers(-3, 3))
def test_g_is_automorphism_q(a, b, n):
    g = tw.automorphism_g(QT)
    alg = QT.alg
    prod = alg.mode(Vec.basis(a), n, Vec.basis(b))
    if any(alg.weight(k) > alg.space.cutoff for k in prod):
        return
    assert g.apply(prod) == alg.mode(g.apply(Vec.basis(a)), n, g.apply(Vec.basis(b)))


basis_h = sorted(HT.alg.space.basis())


@settings(max_examples=30)
@given(st.sampled_from(basis_h), st.sampled_from(basis_h), st.integers(-3, 3))
def test_g_is_automorphism_heisenberg(a, b, n):
    g = tw.automorphism_g(HT)
    alg = HT.alg
    prod = alg.mode(Vec.basis(a), n, Vec.basis(b))
    if any(alg.weight(k) > alg.space.cutoff for k in prod):
        return
    assert g.apply(prod) == alg.mode(g.apply(Vec.basis(a)), n, g.apply(Vec.basis(b)))


@settings(max_examples=30)
@given(st.sampled_from(basis_q), st.sampled_from(basis_q),
       st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_twisted_vertex_is_linear(v, w, c):
    a = tw.twisted_vertex(QT, Vec({v: c}), Vec.basis(w))
    b = tw.twisted_vertex(QT, Vec.basis(v), Vec.basis(w)).scale(c)
    assert a.agrees_with(b)


def test_g_eigenvalues_on_heisenberg():
    g = tw.automorphism_g(HT)
    alg = HT.alg
    for m in (-1, 1):
        e = Vec.basis(alg.e(m))
        assert g.apply(e) == e.scale(root_of_unity(F(m, 2)))
        assert g.apply(e) == e.scale(-1)
    assert isinstance(root_of_unity(F(1, 2)), Scalar)
