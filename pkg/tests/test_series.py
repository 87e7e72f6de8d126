import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from vtwist.errors import IntegralUndefined, Truncated
from vtwist.scalar import root_of_unity, tau
from vtwist.series import LogSeries, TwoVarSeries, expand_binomial, gen_binomial, log_expand_one_plus

exps = st.integers(-12, 12).map(lambda k: F(k, 4))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(bool)


@st.composite
def series(draw, logs=True, avoid_minus_one=False):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        e = draw(exps)
        if avoid_minus_one and e == -1:
            continue
        terms[(e, draw(st.integers(0, 2)) if logs else 0)] = draw(coeffs)
    return LogSeries(terms)


def evaluate(s, x):
    """Float oracle at a positive real point."""
    return sum(float(c) * x ** float(e) * math.log(x) ** k for (e, k), c in s.terms.items())


def mono(c, e, k=0):
    return LogSeries({(F(e), k): F(c)})


def test_integrate_examples():
    assert LogSeries().integrate0() == LogSeries()
    assert mono(1, -2).integrate0() == mono(-1, -1)
    a, b = F(3), F(5)
    s = LogSeries({(F(-3), 0): a, (F(-2), 0): b})
    assert s.integrate0() == LogSeries({(F(-2), 0): -a / 2, (F(-1), 0): -b})
    with pytest.raises(IntegralUndefined):
        mono(1, -1).integrate0()
    with pytest.raises(IntegralUndefined):
        mono(1, 0, 1).integrate0()


def test_ddx_examples():
    assert mono(1, 0, 1).ddx() == mono(1, -1)
    assert mono(1, F(1, 2)).ddx() == mono(F(1, 2), F(-1, 2))
    assert mono(1, -2).integrate0().ddx() == mono(1, -2)


def test_binomial_examples():
    one = expand_binomial(1, "first-large")
    assert one.order is None
    assert one.coefficient(0) == mono(1, 1) and one.coefficient(1) == mono(1, 0)
    assert one.coefficient(2) == LogSeries()
    inv = expand_binomial(-1, "first-large", 3)
    for j in range(4):
        assert inv.coefficient(j) == mono((-1) ** j, -1 - j)
    with pytest.raises(Truncated):
        inv.coefficient(4)
    half = expand_binomial(F(1, 2), "first-large", 2)
    assert [half.coefficient(j) for j in range(3)] == [mono(1, F(1, 2)), mono(F(1, 2), F(-1, 2)),
                                                       mono(F(-1, 8), F(-3, 2))]
    assert expand_binomial(1, "second-large").large == "x2"


def test_log_expansion_examples():
    l1 = log_expand_one_plus(1)
    assert l1.coeffs == {1: mono(1, -1)}
    l2 = log_expand_one_plus(2)
    assert l2.coefficient(2) == mono(F(-1, 2), -2)
    # d/dx2 log(1 + x2/x1) = 1/(x1 + x2), compared at fixed truncation
    lhs = log_expand_one_plus(2).ddx_small()
    assert lhs.agrees_with(expand_binomial(-1, "first-large", 1))


def test_monodromy_examples():
    assert mono(1, F(1, 2)).monodromy_substitute() == mono(-1, F(1, 2))
    t = tau()
    sq = mono(1, 0, 2).monodromy_substitute()
    assert sq == LogSeries({(F(0), 2): 1, (F(0), 1): 2 * t, (F(0), 0): t * t})
    assert mono(1, 1).monodromy_substitute() == mono(1, 1)


def test_window_discipline():
    s = LogSeries({(F(0), 0): F(1)}, lo=0, hi=2)
    with pytest.raises(Truncated):
        s.coefficient(3)
    assert s.coefficient(2) == 0
    prod = s.mul(LogSeries({(F(1), 0): F(1)}, lo=1))
    assert prod.hi == 3
    assert "O(x^(2+))" in s.to_text()


def test_text_is_sorted():
    s = LogSeries({(F(1), 0): F(2), (F(-1, 2), 1): F(-1, 3)})
    assert s.to_text() == "(-1/3)*x^(-1/2)*log(x)^1 + (2)*x^(1)"


@given(series(logs=False, avoid_minus_one=True))
def test_ddx_inverts_integrate0(s):
    assert s.integrate0().ddx() == s


@given(series(), series())
def test_monodromy_is_multiplicative(a, b):
    assert a.mul(b).monodromy_substitute() == a.monodromy_substitute().mul(b.monodromy_substitute())


@given(series())
def test_monodromy_commutes_with_ddx(s):
    assert s.ddx().monodromy_substitute() == s.monodromy_substitute().ddx()


@given(series(), series())
def test_product_rule(a, b):
    assert a.mul(b).ddx() == a.ddx().mul(b) + a.mul(b.ddx())


@given(series(), st.floats(0.3, 3.0))
def test_ddx_matches_numeric_derivative(s, x):
    h = 1e-6
    approx = (evaluate(s, x + h) - evaluate(s, x - h)) / (2 * h)
    assert abs(approx - evaluate(s.ddx(), x)) < 1e-3 * (1 + abs(approx))


@given(st.integers(1, 6), st.integers(1, 6))
def test_pascal_recursion(r, k):
    assert gen_binomial(r, k) == gen_binomial(r - 1, k) + gen_binomial(r - 1, k - 1)


@given(st.fractions(min_value=-3, max_value=3, max_denominator=4), st.floats(0.05, 0.4))
def test_binomial_matches_numeric(r, t):
    # (1 + t)^r from the x1-large expansion at x1 = 1
    order = 30
    ser = expand_binomial(r, "first-large", order)
    total = sum(float(ser.coefficient(j).coefficient(r - j)) * t ** j for j in range(order + 1))
    assert abs(total - (1 + t) ** float(r)) < 1e-8


def test_root_of_unity_in_substitution_uses_exponent_mod_one():
    s = mono(1, F(7, 3))
    assert s.monodromy_substitute() == LogSeries({(F(7, 3), 0): root_of_unity(F(1, 3))})


def test_two_variable_directions_do_not_mix():
    with pytest.raises(ValueError):
        expand_binomial(1, "first-large") + expand_binomial(1, "second-large")
    assert isinstance(expand_binomial(2), TwoVarSeries)
