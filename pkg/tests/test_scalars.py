"""Coefficient field and truncated scalar ring."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ckq.scalars import (C_I, C_ONE, C_SQRT2, C_ZERO, CKValue, Coeff,
                         ExpScalar, pm_div, pm_divides, pm_mul, pm_one,
                         render_coeff, render_pm)

NP = 2

small_frac = st.fractions(min_value=-5, max_value=5, max_denominator=6)
coeffs = st.builds(Coeff, small_frac, small_frac, small_frac, small_frac)


def scalar_strategy():
    mono = st.tuples(st.integers(-3, 3), st.integers(0, 2),
                     st.tuples(st.integers(0, 2), st.integers(0, 2)))
    return st.dictionaries(mono, coeffs, max_size=4).map(
        lambda d: ExpScalar(NP, d))


scalars = scalar_strategy()


# -- Coeff field axioms -----------------------------------------------------

@given(coeffs, coeffs, coeffs)
def test_coeff_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + C_ZERO == a
    assert a * C_ONE == a
    assert a + (-a) == C_ZERO


@given(coeffs)
def test_coeff_inverse(a):
    if a:
        assert a * a.inv() == C_ONE
    else:
        with pytest.raises(ZeroDivisionError):
            a.inv()


def test_coeff_special_elements():
    assert C_I * C_I == -C_ONE
    assert C_SQRT2 * C_SQRT2 == Coeff(2)
    assert render_coeff(C_I) == "i"
    assert Coeff(Fraction(1, 2)) + Coeff(Fraction(1, 2)) == C_ONE


# -- parameter monomials ----------------------------------------------------

def test_pm_arithmetic():
    one = pm_one(3)
    a = (1, 0, 2)
    b = (0, 1, 1)
    assert pm_mul(a, one) == a
    assert pm_mul(a, b) == (1, 1, 3)
    assert pm_divides(b, pm_mul(a, b))
    assert pm_div(pm_mul(a, b), b) == a
    assert not pm_divides((2, 0, 0), a)
    assert render_pm((1, 2, 0)) == "j1*j2^2"
    assert render_pm(pm_one(3)) == "1"


# -- ExpScalar ring ---------------------------------------------------------

@settings(max_examples=60)
@given(scalars, scalars, scalars)
def test_scalar_ring_axioms(a, b, c):
    zero = ExpScalar.zero(NP)
    one = ExpScalar.one(NP)
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + zero == a
    assert a * one == a
    assert a - a == zero


def test_nil_truncation_on_construction():
    j1 = ExpScalar.param(NP, 1)
    sq = (j1 * j1).truncate({1})
    assert not sq
    # other parameters are untouched by the truncation set
    j2 = ExpScalar.param(NP, 2)
    assert (j2 * j2).truncate({1})


@settings(max_examples=60)
@given(scalars, scalars)
def test_truncation_is_multiplicative(a, b):
    S = {1}
    assert (a * b).truncate(S) == a.truncate(S) * b.truncate(S)


@settings(max_examples=60)
@given(scalars)
def test_divide_undoes_multiply(a):
    d = (1, 2)
    assert a.multiply_param(d).divide_param(d) == a


@settings(max_examples=60)
@given(scalars)
def test_principal_plus_remainder(a):
    S = {2}
    pp = a.principal_part(S)
    rest = a - pp
    assert pp + rest == a
    # every remainder term carries a parameter from S
    assert all(m[2][1] > 0 for m in rest.terms)


@settings(max_examples=60)
@given(scalars)
def test_common_divisor_divides(a):
    d = a.common_divisor({1, 2})
    assert all(pm_divides(d, m[2]) for m in a.terms)


@settings(max_examples=40)
@given(scalars, scalars)
def test_substitution_is_a_homomorphism(a, b):
    assignment = (CKValue.IM, CKValue.UNIT)

    def sub(x):
        return x.substitute_params(assignment)

    assert sub(a * b) == sub(a) * sub(b)
    assert sub(a + b) == sub(a) + sub(b)


def test_substitution_values():
    j1 = ExpScalar.param(NP, 1)
    j2 = ExpScalar.param(NP, 2)
    x = j1 * j1 * j2
    # imaginary: j1^2 -> -1; unit: j2 -> 1
    y = x.substitute_params((CKValue.IM, CKValue.UNIT))
    assert y == ExpScalar.const(NP, -C_ONE)
    # nilpotent j1 kills the square outright
    z = x.substitute_params((CKValue.NIL, CKValue.UNIT))
    assert not z
    # keeping nil formal preserves the term for later bookkeeping
    w = x.substitute_params((CKValue.NIL, CKValue.UNIT),
                            keep_nil_formal=True)
    assert w


def test_linearize_t():
    x = ExpScalar.t_pow(NP, 2) + ExpScalar.t_pow(NP, -2)
    J = (1, 1)
    lin = x.linearize_t(J)
    # t^2 + t^-2 -> (1 + Jv) + (1 - Jv) = 2
    assert lin == ExpScalar.const(NP, Coeff(2))
    y = ExpScalar.t_pow(NP, 2) - ExpScalar.t_pow(NP, -2)
    assert y.linearize_t(J) == ExpScalar(
        NP, {(0, 1, (1, 1)): Coeff(2)})


@settings(max_examples=40)
@given(scalars, scalars, st.integers(1, 9), st.integers(1, 9),
       st.integers(1, 9), st.integers(1, 9))
def test_evaluation_is_a_homomorphism(a, b, tn, td, j1, j2):
    t = Coeff(Fraction(tn, td))
    js = [Coeff(j1), Coeff(j2)]
    v = Coeff(Fraction(1, 3))
    assert (a * b).evaluate(t, js, v) == \
        a.evaluate(t, js, v) * b.evaluate(t, js, v)
    assert (a + b).evaluate(t, js, v) == \
        a.evaluate(t, js, v) + b.evaluate(t, js, v)


def test_render():
    x = ExpScalar.t_pow(NP, 2).scale(C_I) + ExpScalar.param(NP, 1)
    assert x.render() == "j1 + i*t^2"
