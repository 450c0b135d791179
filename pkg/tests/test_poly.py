from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from coxgrow.poly import (
    IntPoly,
    RatFunc,
    cyclotomic,
    divrem,
    poly_gcd,
    series_coefficients,
    squarefree_part,
)

T = sympy.Symbol("t")


def P(*c):
    return IntPoly(list(c))


def to_sympy(p: IntPoly):
    return sympy.Poly(list(reversed(p.coeffs)) or [0], T)


def from_sympy(q) -> IntPoly:
    return IntPoly([int(c) for c in reversed(q.all_coeffs())])


polys = st.lists(st.integers(-20, 20), max_size=7).map(IntPoly)
nonzero = polys.filter(bool)


def test_examples():
    assert poly_gcd(P(-1, 0, 1), P(1, -2, 1)) == P(-1, 1)
    assert P(-1, -1, 0, 1).derivative() == P(-1, 0, 3)
    # 64/27 - 36/27 - 27/27
    assert P(-1, -1, 0, 1)(Fraction(4, 3)) == Fraction(1, 27)
    assert P(-1, -1, 0, 1).sign_at(Fraction(4, 3)) == 1
    assert P(-1, -1, 0, 1).reciprocal() == P(1, 0, -1, -1)
    assert P(1, 1).reciprocal() == P(1, 1)


def test_ratfunc_examples():
    one = RatFunc(P(1))
    s = RatFunc(P(1), P(1, 1)) + RatFunc(P(1), P(1, -1))
    assert s == RatFunc(P(2), P(1, 0, -1))
    assert RatFunc(P(-1, 0, 1), P(-1, 1)) == RatFunc(P(1, 1))
    assert one - RatFunc(P(1), P(1, 1)) == RatFunc(P(0, 1), P(1, 1))


def test_series_examples():
    assert series_coefficients(RatFunc(P(1, 1), P(1, -1)), 4) == [1, 2, 2, 2, 2]
    assert series_coefficients(RatFunc(P(1), P(1, -1) * P(1, -1)), 3) == [1, 2, 3, 4]


def test_parse_and_str_roundtrip():
    p = IntPoly.parse("t^3 - t - 1")
    assert p == P(-1, -1, 0, 1)
    assert IntPoly.parse(str(p)) == p
    assert IntPoly.parse("[1, 0, -2]") == P(1, 0, -2)
    with pytest.raises(ValueError):
        IntPoly.parse("t^^2")


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        divrem(P(1, 1), IntPoly())
    with pytest.raises(ZeroDivisionError):
        RatFunc(P(1), IntPoly())
    with pytest.raises(ZeroDivisionError):
        RatFunc(P(1)) / RatFunc(IntPoly())


def test_reciprocal_needs_constant_term():
    with pytest.raises(ValueError):
        P(0, 1).reciprocal()


def test_immutable():
    with pytest.raises(AttributeError):
        P(1).coeffs = (2,)


def test_cyclotomic_against_sympy():
    for n in range(1, 40):
        assert cyclotomic(n) == from_sympy(sympy.Poly(sympy.cyclotomic_poly(n, T), T))


@given(polys, polys)
def test_ring_ops_match_sympy(a, b):
    assert to_sympy(a + b) == to_sympy(a) + to_sympy(b)
    assert to_sympy(a - b) == to_sympy(a) - to_sympy(b)
    assert to_sympy(a * b) == to_sympy(a) * to_sympy(b)


@given(polys, nonzero)
def test_divrem_identity(a, d):
    q, r = divrem(a, d)
    qs = sum((c * T**k for k, c in enumerate(q)), sympy.Integer(0))
    rs = sum((c * T**k for k, c in enumerate(r)), sympy.Integer(0))
    assert sympy.expand(qs * to_sympy(d).as_expr() + rs - to_sympy(a).as_expr()) == 0
    assert len(r) - 1 < d.degree or not r


@given(nonzero, nonzero)
def test_gcd_matches_sympy(a, b):
    g = poly_gcd(a, b)
    ref = sympy.gcd(to_sympy(a), to_sympy(b))
    ref = from_sympy(ref).primitive()
    assert g == ref
    assert g.lc > 0 and g.content() == 1


@given(nonzero, nonzero)
def test_ratfunc_canonical(a, b):
    f = RatFunc(a, b)
    assert f.den.lc > 0
    assert poly_gcd(f.num, f.den).degree <= 0
    # scaling numerator and denominator gives the same representative
    assert RatFunc(a * P(-3, 0, 2), b * P(-3, 0, 2)) == f
    assert to_sympy(f.num) * to_sympy(b) == to_sympy(a) * to_sympy(f.den)


@given(nonzero, nonzero.filter(lambda p: p[0] != 0), st.integers(0, 12))
def test_series_inverts_denominator(a, b, n):
    # den * series agrees with num up to t^n, so the expansion is the Taylor series
    c = series_coefficients(RatFunc(a, b), n)
    f = RatFunc(a, b)
    for k in range(n + 1):
        assert sum(f.den[j] * c[k - j] for j in range(k + 1)) == f.num[k]


@given(nonzero)
@settings(max_examples=60)
def test_squarefree_part(p):
    q = squarefree_part(p)
    if p.degree <= 0:
        return
    ref = from_sympy(sympy.sqf_part(to_sympy(p))).primitive()
    assert q == ref
