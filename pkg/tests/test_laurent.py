from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services.errors import BadIndex, NonIntegralComposition, ParseError
from services.laurent import A, LOOP_VALUE, LaurentPoly, laurent_arith, parse_poly, poly_sum

small_polys = st.dictionaries(
    st.integers(min_value=-6, max_value=6), st.integers(min_value=-4, max_value=4), max_size=4
).map(lambda terms: poly_sum(LaurentPoly.var("A", e, c) for e, c in terms.items()))


@given(small_polys, small_polys)
@settings(max_examples=60)
def test_addition_and_multiplication_commute(p, q):
    assert p + q == q + p
    assert p * q == q * p


@given(small_polys, small_polys, small_polys)
@settings(max_examples=40)
def test_distributive_and_associative(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)


@given(small_polys)
@settings(max_examples=40)
def test_text_form_parses_back(p):
    assert parse_poly(p.to_text()) == p


def test_loop_value_text():
    assert LOOP_VALUE.to_text() == "-A^2 - A^-2"


def test_unit_monomials_invert():
    assert A * A ** -1 == 1
    assert (-(A ** 3)) ** -1 == -(A ** -3)


def test_non_monomial_is_not_invertible():
    with pytest.raises(NonIntegralComposition):
        LOOP_VALUE ** -1


def test_zero_terms_are_dropped():
    p = A - A
    assert p.is_zero()
    assert p.variables == ()
    assert p.to_text() == "0"


def test_quarter_exponents():
    t_half = LaurentPoly.var("t", Fraction(1, 2))
    assert t_half.to_text() == "t^(1/2)"
    assert t_half * t_half == LaurentPoly.var("t")
    assert parse_poly("t^(1/2) - t^(-1/2)").coefficient(t=Fraction(-1, 2)) == -1


def test_exponent_off_the_grid_is_rejected():
    with pytest.raises(NonIntegralComposition):
        LaurentPoly.var("t", Fraction(1, 3))


def test_substitution_into_jones_variable():
    f = parse_poly("A^-4 + A^-12 - A^-16")
    jones = f.substitute("A", LaurentPoly.var("t", Fraction(-1, 4)))
    assert jones.to_text() == "-t^4 + t^3 + t"


def test_substitution_leaving_the_grid_fails():
    with pytest.raises(NonIntegralComposition):
        LaurentPoly.var("A", Fraction(1, 4)).substitute("A", LaurentPoly.var("t", Fraction(1, 2)))


def test_series_coefficients_at_exponential():
    jones = parse_poly("-t^4 + t^3 + t")
    assert jones.series_coeffs("t", 2) == [1, 0, -3]
    with pytest.raises(BadIndex):
        parse_poly("t + z").series_coeffs("t", 2)


def test_multivariate_alignment():
    p = parse_poly("a*z + K1")
    q = parse_poly("a*z - K1")
    assert (p + q).to_text() == "2*a*z"
    assert p.variables == ("K1", "a", "z")


def test_immutable():
    with pytest.raises(AttributeError):
        A.terms = {}


def test_json_form():
    p = parse_poly("t^(1/2) - 3*t^-2")
    assert LaurentPoly.from_json(p.to_json()) == p


def test_arith_dispatch():
    assert laurent_arith("neg", A) == -A
    assert laurent_arith("scale", A, 3) == 3 * A
    with pytest.raises(ValueError):
        laurent_arith("div", A, A)


@pytest.mark.parametrize("text", ["", "2**A", "A^x"])
def test_bad_text(text):
    with pytest.raises(ParseError):
        parse_poly(text)
