from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import rf_to_sympy, u, uinv_coefficients
from yosp.errors import InvalidInput, SingularSeries
from yosp.exact import Polynomial, RationalFunction, RootMultiset
from yosp.series import FactoredSeries, TruncatedSeries, rational_from_series, rf_to_series
from yosp.superlinalg import Op

K = 6
coef = st.fractions(min_value=-4, max_value=4, max_denominator=3)
series = st.lists(coef, min_size=K + 1, max_size=K + 1).map(TruncatedSeries)
unit_series = st.lists(coef, min_size=K, max_size=K).map(lambda c: TruncatedSeries([Fraction(1)] + c))
roots = st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=2), max_size=3)


def rf_1(zs, ps):
    """Monic, degree-balanced: ``prod (u - z) / prod (u - p)`` padded with u."""
    k = max(len(zs), len(ps))
    return RationalFunction(
        Polynomial.from_roots(zs) * Polynomial([0, 1]) ** (k - len(zs)),
        Polynomial.from_roots(ps) * Polynomial([0, 1]) ** (k - len(ps)),
    )


def to_expr(s: TruncatedSeries):
    return sum(sp.Rational(c.numerator, c.denominator) * u ** (-r) for r, c in enumerate(s.coeffs))


def coeffs_of(expr, order=K):
    return uinv_coefficients(expr, order)


@given(series, series)
def test_product_matches_sympy(a, b):
    assert list((a * b).coeffs) == coeffs_of(sp.expand(to_expr(a) * to_expr(b)))


@given(unit_series)
def test_inverse_matches_sympy(a):
    inv = a.inverse()
    assert list(inv.coeffs) == coeffs_of(1 / to_expr(a))
    assert (a * inv).coeffs == TruncatedSeries.one(K).coeffs


@given(series, coef)
@settings(max_examples=40)
def test_shift_matches_sympy(a, c):
    want = coeffs_of(to_expr(a).subs(u, u + sp.Rational(c.numerator, c.denominator)))
    assert list(a.shift(c).coeffs) == want


@given(series, coef.filter(bool))
def test_scale(a, c):
    want = coeffs_of(to_expr(a).subs(u, sp.Rational(c.numerator, c.denominator) * u))
    assert list(a.scale(c).coeffs) == want


def test_singular_inverse():
    with pytest.raises(SingularSeries):
        TruncatedSeries([Fraction(0), Fraction(1)]).inverse()


def test_operator_coefficients_keep_order():
    A = Op.from_dense([[0, 1], [0, 0]])
    B = Op.from_dense([[0, 0], [1, 0]])
    I = Op.identity(2)
    s = TruncatedSeries([I, A, I * 0])
    t = TruncatedSeries([I, B, I * 0])
    st_ = (s * t)[2]
    ts_ = (t * s)[2]
    assert st_ == A * B and ts_ == B * A and st_ != ts_
    inv = s.inverse()
    assert (s * inv)[1].is_zero() and (s * inv)[2].is_zero()


@given(roots, roots)
@settings(max_examples=60)
def test_rf_to_series_matches_sympy(zs, ps):
    f = rf_1(zs, ps)
    assert list(rf_to_series(f, K).coeffs) == coeffs_of(rf_to_sympy(f))


def test_rf_to_series_rejects_pole_at_infinity():
    with pytest.raises(InvalidInput):
        rf_to_series(RationalFunction(Polynomial([0, 1])))


@given(roots, roots)
@settings(max_examples=60)
def test_rational_reconstruction_round_trip(zs, ps):
    f = rf_1(zs, ps)
    order = 2 * max(len(zs), len(ps)) + 2
    assert rational_from_series(rf_to_series(f, order)) == f


def test_rational_reconstruction_gives_up():
    # e^{1/u} truncated is not rational of small degree
    import math

    s = TruncatedSeries([Fraction(1, math.factorial(r)) for r in range(9)])
    assert rational_from_series(s) is None


@given(roots, roots)
@settings(max_examples=60)
def test_factored_canonical_form(zs, ps):
    f = rf_1(zs, ps)
    F = FactoredSeries.from_rational(f)
    assert F.to_rational() == f
    assert 0 not in F.roots
    # canonical: nonzero numerator zeros become roots, the tail has no rational zeros but 0
    assert all(z == 0 for z in F.tail.zeros())
    assert FactoredSeries.from_rational(F.to_rational()).roots == F.roots


@given(roots, roots, roots, roots, coef)
@settings(max_examples=40)
def test_factored_algebra_matches_rational(a, b, c, d, s):
    F, G = FactoredSeries.from_rational(rf_1(a, b)), FactoredSeries.from_rational(rf_1(c, d))
    assert (F * G).to_rational() == F.to_rational() * G.to_rational()
    assert (F / G).to_rational() == F.to_rational() / G.to_rational()
    assert F.shift(s).to_rational() == F.to_rational().shift(s)
    assert (F * F.inverse()) == FactoredSeries.one()
    assert (F * G).series(K) == F.series(K) * G.series(K)


def test_factored_basics():
    F = FactoredSeries.linear(2)
    assert F.roots == RootMultiset([2]) and F.is_polynomial_in_uinv()
    assert FactoredSeries.linear(0) == FactoredSeries.one()
    assert str(FactoredSeries.one()) == "1"
    assert "u^-1" in str(F * FactoredSeries.linear(-1))
    assert not FactoredSeries.from_rational(RationalFunction(Polynomial([0, 1]), Polynomial([1, 1]))).is_polynomial_in_uinv()
    with pytest.raises(InvalidInput):
        FactoredSeries(tail=RationalFunction(Polynomial([1, 2]), Polynomial([0, 1])))
    with pytest.raises(InvalidInput):
        FactoredSeries.from_rational(RationalFunction(Polynomial([1, 2]), Polynomial([0, 1])))
    assert F(Fraction(1)) == 3
    assert hash(F) == hash(FactoredSeries.from_rational(F.to_rational()))
