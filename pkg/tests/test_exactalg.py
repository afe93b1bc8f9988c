from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quartic_brauer.exactalg import (
    QI, QM, QQ, QSQRT2, QZETA8, FieldMismatch, embed, format_element, m_i, m_r4,
    nf_arith, nf_embed, nf_is_nth_power, rational_factor, zeta8_sqrt2,
)

small_q = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elements(field):
    return st.lists(small_q, min_size=field.degree, max_size=field.degree).map(field)


def test_gaussian_norm_identity():
    i = QI.gen
    assert nf_arith("mul", 1 + i, 1 - i) == 2
    assert (1 + i) ** 2 == 2 * i


def test_zeta8_relation():
    a = QZETA8.gen
    assert a ** 4 == -1
    assert zeta8_sqrt2() ** 2 == 2


def test_division_by_zero_and_mismatch():
    with pytest.raises(ZeroDivisionError):
        nf_arith("div", QI.one, QI.zero)
    with pytest.raises(FieldMismatch):
        QI.one + QZETA8.one


def test_embed_gaussian_into_zeta8():
    img = nf_embed(QI.gen, QZETA8, QZETA8.gen ** 2)
    assert img == QZETA8([0, 0, 1, 0])
    assert nf_embed(QQ(Fraction(7, 3)), QM, QM.gen) == Fraction(7, 3)


def test_embed_rejects_bad_image():
    with pytest.raises(ValueError):
        nf_embed(QI.gen, QZETA8, QZETA8.gen)


def test_one_plus_i_fourth_power_in_M():
    assert embed(1 + QI.gen, QM) ** 4 == -4


def test_M_generators_match_sympy():
    # oracle: sympy's minimal polynomial of 2^(1/4)+i
    X = sympy.Symbol("X")
    mp = sympy.minimal_polynomial(sympy.root(2, 4) + sympy.I, X)
    assert sympy.Poly(mp, X).all_coeffs()[::-1] == list(QM.min_poly)
    assert m_i() ** 2 == -1 and m_r4() ** 4 == 2


def test_square_examples_in_zeta8():
    r = nf_is_nth_power(QZETA8(2), 2)
    assert r is not None and r ** 2 == 2
    assert nf_is_nth_power(embed(QSQRT2.gen, QZETA8), 2) is None
    r = nf_is_nth_power(embed(QI.gen, QZETA8), 2)
    assert r is not None and r ** 2 == embed(QI.gen, QZETA8)


def test_fourth_roots_in_M():
    assert nf_is_nth_power(QM(2), 4) ** 4 == 2
    assert nf_is_nth_power(QM(-4), 4) ** 4 == -4
    assert nf_is_nth_power(QM(3), 2) is None
    assert nf_is_nth_power(embed(QSQRT2.gen, QM), 4) is None


def test_square_test_agrees_with_sympy_factoring():
    # oracle: factor X^2 - x over the field with sympy
    X = sympy.Symbol("X")
    for q in (2, -1, 3, -2, 6, Fraction(1, 2)):
        x = QZETA8(q)
        ours = nf_is_nth_power(x, 2) is not None
        f = sympy.factor_list(X ** 2 - sympy.nsimplify(q), X, extension=[sympy.I, sympy.sqrt(2)])
        split = all(sympy.degree(p, X) == 1 for p, _ in f[1])
        assert ours == split


def test_root_choice_is_deterministic():
    r1 = nf_is_nth_power(QI(-4), 2)
    r2 = nf_is_nth_power(QI(-4), 2)
    assert r1 == r2 == 2 * QI.gen


def test_rational_factor_examples():
    assert rational_factor(209952) == (1, {2: 5, 3: 8})
    assert rational_factor(-4) == (-1, {2: 2})
    assert rational_factor(1) == (1, {})
    assert rational_factor(Fraction(-9, 8)) == (-1, {2: -3, 3: 2})
    with pytest.raises(ValueError):
        rational_factor(0)


def test_format_element():
    assert format_element(1 + QI.gen) == "1+i"
    assert format_element(embed(QI.gen, QZETA8) * zeta8_sqrt2() * -2) == "-2*i*sqrt2"


@settings(max_examples=200, deadline=None)
@given(elements(QM), elements(QM))
def test_mul_div_roundtrip(x, y):
    if y.is_zero():
        return
    assert nf_arith("div", nf_arith("mul", x, y), y) == x


@settings(max_examples=100, deadline=None)
@given(elements(QZETA8))
def test_square_always_detected(x):
    if x.is_zero():
        return
    r = nf_is_nth_power(x * x, 2)
    assert r is not None and r * r == x * x


@settings(max_examples=100, deadline=None)
@given(elements(QZETA8), elements(QZETA8))
def test_embedding_is_homomorphism(x, y):
    assert embed(x * y, QM) == embed(x, QM) * embed(y, QM)
    assert embed(x + y, QM) == embed(x, QM) + embed(y, QM)
    if not x.is_zero():
        assert nf_is_nth_power(embed(x * x, QM), 2) is not None


nonzero = st.fractions(max_denominator=10 ** 6).filter(lambda q: q != 0)


@settings(max_examples=1000, deadline=None)
@given(nonzero, nonzero)
def test_rational_factor_multiplicative(p, q):
    s1, e1 = rational_factor(p)
    s2, e2 = rational_factor(q)
    s, e = rational_factor(p * q)
    merged = dict(e1)
    for k, v in e2.items():
        merged[k] = merged.get(k, 0) + v
    assert s == s1 * s2
    assert e == {k: v for k, v in merged.items() if v}
