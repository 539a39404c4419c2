from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given, strategies as st

from g24star.errors import DivisionByZero, NegativeValuation, PoleAtValue
from g24star.exact_scalars import (HBAR, ONE, ZERO, GaussianRational, HRational, hr_arith, hr_eval,
                                   hr_series_at_zero, poly_gcd, to_rational)

h = sp.Symbol("h")
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
coeffs = st.lists(fracs, min_size=0, max_size=4)


@st.composite
def hrationals(draw):
    num = draw(coeffs)
    den = draw(st.lists(fracs, min_size=1, max_size=4).filter(lambda c: any(x != 0 for x in c)))
    return HRational(num, den)


def to_sympy(a: HRational):
    n = sum(sp.Rational(str(c)) * h ** k for k, c in enumerate(a.num))
    d = sum(sp.Rational(str(c)) * h ** k for k, c in enumerate(a.den))
    return n / d


def same(a: HRational, expr) -> bool:
    return sp.cancel(to_sympy(a) - expr) == 0


def test_tau_2_canonical_form():
    t = HRational.tau(2)
    assert [int(c) for c in t.num] == [1, -1]
    assert [int(c) for c in t.den] == [0, 1]
    assert t == HRational.const(1) - 2 + ONE / HBAR


def test_trivial_identities():
    a = HRational([1, 2], [3, 0, 1])
    assert a + ZERO == a
    assert (ONE / HBAR) * HBAR == ONE


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        hr_arith(ONE, ZERO, "div")
    with pytest.raises(DivisionByZero):
        HRational([1], [0])


def test_eval_and_pole():
    assert hr_eval(HRational.tau(2), Fraction(1, 2)) == 1
    with pytest.raises(PoleAtValue):
        hr_eval(HRational.tau(2), 0)


def test_series():
    # 1/(1 - h) = 1 + h + h^2 + ...
    assert hr_series_at_zero(HRational([1], [1, -1]), 4) == [1] * 5
    with pytest.raises(NegativeValuation):
        hr_series_at_zero(HRational.tau(1), 2)
    # h / tau_2 = h^2 / (1 - h)
    assert hr_series_at_zero(HBAR / HRational.tau(2), 3) == [0, 0, 1, 1]


def test_to_rational_rejects_float():
    with pytest.raises(TypeError):
        to_rational(0.5)
    assert to_rational("0.25") == Fraction(1, 4)
    assert to_rational("-3/6") == Fraction(-1, 2)


def test_json_roundtrip_and_str():
    a = HRational([1, -1], [0, 1])
    assert HRational.from_json(a.to_json()) == a
    assert str(a) == "(1 - h)/(h)"


def test_gaussian_rational():
    z = GaussianRational("1/2", "-1/3")
    assert z * z.conjugate() == GaussianRational(Fraction(13, 36))
    assert (z / z) == 1
    assert complex(z) == complex(0.5, -1 / 3)
    with pytest.raises(ZeroDivisionError):
        z / GaussianRational(0)


@given(hrationals(), hrationals())
def test_arith_matches_sympy(a, b):
    A, B = to_sympy(a), to_sympy(b)
    assert same(hr_arith(a, b, "add"), A + B)
    assert same(hr_arith(a, b, "sub"), A - B)
    assert same(hr_arith(a, b, "mul"), A * B)
    if not b.is_zero():
        assert same(hr_arith(a, b, "div"), A / B)


@given(hrationals())
def test_canonical_form_invariants(a):
    assert a.den and a.den[-1] == 1
    if a.num:
        g = poly_gcd(a.num, a.den)
        assert len(g) == 1


@given(hrationals(), hrationals(), hrationals())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == ONE


@given(hrationals(), st.integers(0, 5))
def test_series_matches_sympy(a, order):
    assume(not a.is_zero() and a.valuation() >= 0)
    want = sp.series(to_sympy(a), h, 0, order + 1).removeO()
    got = hr_series_at_zero(a, order)
    assert [sp.Rational(str(c)) for c in got] == [want.coeff(h, k) for k in range(order + 1)]


@given(hrationals(), fracs)
def test_eval_is_homomorphism(a, x):
    assume(sp.Rational(str(x)) not in sp.roots(sp.Poly(list(reversed([sp.Rational(str(c)) for c in a.den])), h)))
    assert hr_eval(a * a, x) == hr_eval(a, x) ** 2
