from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from e6baw.cyclopoly import (
    ONE,
    CycloProduct,
    ParseError,
    ValuationContext,
    ValuationForm,
    div_exact,
    ennola,
    evaluate,
    is_polynomial,
    nu,
    parse,
    phi_poly,
    positive_for_all_a,
    render,
    signed_qpow_minus,
    valuation,
)
from oracles import mult_order, nu_int, phi_at, pmul, qpow_minus

D_VALUES = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 18, 20, 24, 30]

products = st.builds(
    CycloProduct.make,
    st.fractions(min_value=Fraction(-20), max_value=Fraction(20)).filter(lambda c: c != 0),
    st.integers(-4, 8),
    st.dictionaries(st.sampled_from(D_VALUES), st.integers(-3, 4), max_size=5),
)
polynomials = st.builds(
    CycloProduct.make,
    st.integers(1, 12),
    st.integers(0, 8),
    st.dictionaries(st.sampled_from(D_VALUES), st.integers(0, 4), max_size=5),
)


@pytest.mark.parametrize("d", range(1, 41))
def test_phi_poly_matches_moebius_oracle(d):
    coeffs = phi_poly(d)
    for x in (2, 3, -2, 5):
        assert sum(c * x**i for i, c in enumerate(coeffs)) == phi_at(d, x)


def test_phi_small_cases():
    assert phi_poly(1) == (-1, 1)
    assert phi_poly(2) == (1, 1)
    assert phi_poly(4) == (1, 0, 1)
    assert phi_poly(6) == (1, -1, 1)


@pytest.mark.parametrize("k", range(1, 13))
@pytest.mark.parametrize("s", (1, -1))
def test_signed_qpow_minus_expands_correctly(k, s):
    f = signed_qpow_minus(k, s)
    for x in (2, 3, 7):
        assert evaluate(f, x) == x**k - s


def test_e6_style_order_product():
    # (q^2-1)(q^5-1) = PHI1^2 PHI2 PHI5
    f = signed_qpow_minus(2, 1) * signed_qpow_minus(5, 1)
    assert f.multiplicities == {1: 2, 2: 1, 5: 1}
    expanded = pmul(qpow_minus(2), qpow_minus(5))
    assert evaluate(f, 3) == sum(c * 3**i for i, c in enumerate(expanded))


@given(products, products)
def test_mul_matches_evaluation(f, g):
    for x in (2, 3, -3):
        assert evaluate(f * g, x) == evaluate(f, x) * evaluate(g, x)


@given(products, products)
def test_division_inverts_multiplication(f, g):
    assert div_exact(f * g, g) == f


@given(products)
def test_render_parse_round_trip(f):
    assert parse(render(f)) == f


@given(products)
def test_ennola_is_involution_and_substitutes(f):
    assert ennola(ennola(f)) == f
    for x in (2, 3, 5):
        assert evaluate(ennola(f), x) == evaluate(f, -x)


def test_ennola_examples():
    assert ennola(CycloProduct.phi(1)) == CycloProduct.make(-1, 0, {2: 1})
    assert abs(ennola(CycloProduct.phi(3))) == CycloProduct.phi(6)
    assert abs(ennola(CycloProduct.phi(6))) == CycloProduct.phi(3)
    assert abs(ennola(CycloProduct.phi(4))) == CycloProduct.phi(4)
    assert abs(ennola(CycloProduct.phi(10))) == CycloProduct.phi(5)


def test_parse_sugar_and_render_forms():
    assert parse("(q^2-1)^2*(q+1)") == CycloProduct.make(1, 0, {1: 2, 2: 3})
    assert parse("(q-1)*(q^3+1)") == CycloProduct.make(1, 0, {1: 1, 2: 1, 6: 1})
    assert render(parse("1/2 * q^3 * PHI(2)^4 * PHI(6)")) == "1/2*q^3*PHI(2)^4*PHI(6)"
    assert render(ONE) == "1"
    assert render(CycloProduct.q()) == "q"
    assert parse("PHI(3)^-2") == CycloProduct.phi(3, -2)


@pytest.mark.parametrize("bad", ["", "PHI(0)", "PHI(3", "q**2", "2*x", "0", "PHI(2)PHI(3)", "1/0"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_is_polynomial():
    assert is_polynomial(CycloProduct.make(Fraction(1, 2), 3, {2: 4}))
    assert not is_polynomial(CycloProduct.phi(3, -1))
    assert not is_polynomial(CycloProduct.q(-1))


def test_valuation_rule_examples():
    ctx = ValuationContext(5, 1)
    assert valuation(CycloProduct.phi(1), ctx) == ValuationForm(1, 0)
    assert valuation(CycloProduct.phi(5), ctx) == ValuationForm(0, 1)
    assert valuation(CycloProduct.phi(25), ctx) == ValuationForm(0, 1)
    assert valuation(CycloProduct.phi(2), ctx) == ValuationForm(0, 0)
    assert valuation(CycloProduct.make(Fraction(25, 2)), ctx) == ValuationForm(0, 2)
    ctx2 = ValuationContext(7, 2)
    assert valuation(CycloProduct.phi(14, 3) * CycloProduct.phi(2, 2), ctx2) == ValuationForm(2, 3)


def test_context_rejects_bad_inputs():
    with pytest.raises(ValueError):
        ValuationContext(3, 1)
    with pytest.raises(ValueError):
        ValuationContext(7, 4)
    with pytest.raises(ValueError):
        ValuationContext(9, 2)


def test_valuation_form_arithmetic():
    a, b = ValuationForm(3, 1), ValuationForm(1, 1)
    assert a - b == ValuationForm(2, 0)
    assert (a + b).at(2) == 10
    assert str(a) == "(3,1)"
    assert positive_for_all_a(ValuationForm(1, 0))
    assert not positive_for_all_a(ValuationForm(0, 0))
    assert not positive_for_all_a(ValuationForm(-1, 5))


@given(products, st.sampled_from([5, 7, 11, 13]), st.sampled_from(range(2, 400)))
def test_valuation_matches_integer_oracle(f, l, q0):
    if q0 % l == 0 or q0 < 2:
        return
    if any(phi_at(d, q0) == 0 for d in f.multiplicities):
        return
    ctx = ValuationContext(l, mult_order(q0, l))
    form = valuation(f, ctx)
    a = nu_int(phi_at(ctx.e, q0), l)
    assert form.at(a) == nu_int(evaluate(f, q0), l)


def test_nu():
    assert nu(250, 5) == 3
    assert nu(Fraction(3, 25), 5) == -2
    assert nu(7, 5) == 0
