from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from vtwist.errors import IrrationalSpectrum, NotNilpotent
from vtwist.graded import (GradedOperator, WeightBlockSpace, charpoly, exp_nilpotent, identity, inverse,
                           is_zero_matrix, jordan_chevalley, jordan_chevalley_matrix, log_action_unipotent,
                           mat_add, mat_mul, mat_pow, rational_roots, x_power_semisimple)
from vtwist.scalar import tau
from vtwist.vector import Vec


def one_block(m):
    n = len(m)
    space = WeightBlockSpace({F(0): list(range(n))}, F(0))
    return space, GradedOperator(space, 0, {F(0): m})


def det(m):
    """Fraction Gaussian elimination: independent of the Hessenberg charpoly."""
    a = [row[:] for row in m]
    n = len(a)
    d = F(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return F(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


@st.composite
def split_matrices(draw):
    """B J B^{-1} with rational eigenvalues and random Jordan structure."""
    n = draw(st.integers(1, 5))
    j = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        j[i][i] = F(draw(st.integers(-3, 3)), draw(st.sampled_from([1, 2])))
    for i in range(n - 1):
        if j[i][i] == j[i + 1][i + 1] and draw(st.booleans()):
            j[i][i + 1] = F(1)
    # unit lower times unit upper triangular: always invertible
    low = [[F(1) if r == c else (F(draw(st.integers(-2, 2))) if r > c else F(0)) for c in range(n)]
           for r in range(n)]
    up = [[F(1) if r == c else (F(draw(st.integers(-2, 2))) if r < c else F(0)) for c in range(n)]
          for r in range(n)]
    b = mat_mul(low, up)
    return mat_mul(mat_mul(b, j), inverse(b))


def test_jc_examples():
    z, one = F(0), F(1)
    nil = jordan_chevalley_matrix([[z, one], [z, z]])
    assert is_zero_matrix(nil.semisimple) and nil.nilpotent == [[z, one], [z, z]]
    dist = jordan_chevalley_matrix([[one, one], [z, F(2)]])
    assert dist.semisimple == [[one, one], [z, F(2)]] and is_zero_matrix(dist.nilpotent)
    uni = jordan_chevalley_matrix([[one, one], [z, one]])
    assert uni.semisimple == identity(2) and uni.nilpotent == [[z, one], [z, z]]
    assert uni.nilpotency_index == 2


def test_irrational_spectrum():
    with pytest.raises(IrrationalSpectrum):
        jordan_chevalley_matrix([[F(0), F(2)], [F(1), F(0)]])


def test_exp_nilpotent_examples():
    space, n = one_block([[F(0), F(1)], [F(0), F(0)]])
    t = tau()
    e = exp_nilpotent(n, t)
    assert e.blocks[F(0)][0][1] == t and e.blocks[F(0)][0][0] == 1
    _, zero = one_block([[F(0)] * 2 for _ in range(2)])
    assert exp_nilpotent(zero, t).blocks[F(0)] == identity(2)
    prod = exp_nilpotent(n, t).compose(exp_nilpotent(n, -t))
    assert prod == GradedOperator.identity(space)
    _, bad = one_block([[F(1)]])
    with pytest.raises(NotNilpotent):
        exp_nilpotent(bad, t)


def test_x_power_examples():
    space, zero = one_block([[F(0)] * 2 for _ in range(2)])
    v = Vec({0: F(1), 1: F(2)})
    assert x_power_semisimple(jordan_chevalley(zero), v) == LogSeries_const(v)
    _, a = one_block([[F(3, 2), F(0)], [F(0), F(3, 2)]])
    s = x_power_semisimple(jordan_chevalley(a), Vec.basis(0))
    assert s.terms == {(F(3, 2), 0): Vec.basis(0)}
    _, b = one_block([[F(0), F(0)], [F(0), F(1)]])
    s = x_power_semisimple(jordan_chevalley(b), Vec({0: F(1), 1: F(1)}))
    assert s.terms == {(F(0), 0): Vec.basis(0), (F(1), 0): Vec.basis(1)}


def LogSeries_const(v):
    from vtwist.series import LogSeries
    return LogSeries({(F(0), 0): v})


def test_log_action_examples():
    _, n = one_block([[F(0), F(1)], [F(0), F(0)]])
    jc = jordan_chevalley(n)
    v = Vec.basis(1)
    s = log_action_unipotent(jc, v)
    assert s.terms == {(F(0), 0): v, (F(0), 1): Vec.basis(0)}
    # e^{N(log x + tau)} = e^{N tau} e^{N log x}
    lhs = s.monodromy_substitute()
    g = exp_nilpotent(jc.nilpotent, tau())
    rhs = s.map(g.apply)
    assert lhs == rhs


@given(split_matrices())
def test_jc_invariants(a):
    jc = jordan_chevalley_matrix(a)
    s, n = jc.semisimple, jc.nilpotent
    assert mat_add(s, n) == a
    assert mat_mul(s, n) == mat_mul(n, s)
    assert is_zero_matrix(mat_pow(n, len(a)))
    # S is diagonalizable: its minimal polynomial has simple roots
    prod = identity(len(a))
    for lam, _ in jc.eigenvalues:
        prod = mat_mul(prod, mat_add(s, identity(len(a)), -lam))
    assert is_zero_matrix(prod)
    assert sum(m for _, m in jc.eigenvalues) == len(a)
    # S commutes with the commutant sample: A and polynomials in A
    for c in (a, mat_mul(a, a), mat_add(mat_mul(a, a), a, 3)):
        assert mat_mul(s, c) == mat_mul(c, s)


@given(split_matrices(), st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=3,
                                  max_size=3))
def test_charpoly_matches_determinant(a, points):
    p = charpoly(a)
    n = len(a)
    for x in points:
        value = sum(c * x ** i for i, c in enumerate(p))
        assert value == det([[(x if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)])


@given(split_matrices())
def test_roots_have_full_multiplicity(a):
    assert sum(m for _, m in rational_roots(charpoly(a))) == len(a)


@given(split_matrices())
def test_x_power_then_x_one_is_identity(a):
    space, op = one_block(a)
    jc = jordan_chevalley(op)
    for k in range(len(a)):
        assert x_power_semisimple(jc, Vec.basis(k)).set_x_one() == Vec.basis(k)
