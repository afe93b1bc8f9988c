import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quartic_brauer.exactalg import QI, QZETA8
from quartic_brauer.funcfield import (
    Place, Poly, RatFunc, nth_power_class, poly_gcd, rf_is_nth_power_up_to_const,
    rf_unit_part, rf_val, squarefree_decomposition,
)

i = QI.gen
y = RatFunc.var(QI)
yp = Poly.var(QI)
origin = Place(yp)
inf = Place.infinity()


def test_val_examples():
    assert rf_val(y ** 2, origin) == 2
    assert rf_val(RatFunc.const(QI, i) / (2 * y ** 2), origin) == -2
    assert rf_val((y ** 2 + 1) / y, inf) == -1


def test_val_of_zero_raises():
    with pytest.raises(ValueError):
        rf_val(RatFunc.const(QI, 0), origin)


def test_unit_part_examples():
    assert rf_unit_part(2 * y ** 3, origin) == 2
    f = (y - i) / (y + i)
    assert rf_unit_part(f, Place.at(QI, i)) == 1 / (2 * i)
    assert rf_unit_part(y ** 4 + 1, inf) == 1
    assert rf_unit_part(3 / y ** 2 + y, inf) == 1


def test_unit_part_rejects_high_degree_place():
    with pytest.raises(ValueError):
        rf_unit_part(y, Place(yp ** 2 - 2))


def test_place_validation():
    with pytest.raises(ValueError):
        Place(yp ** 2)
    with pytest.raises(ValueError):
        Place(Poly.const(QI, 1))


def test_nth_power_up_to_const_examples():
    assert rf_is_nth_power_up_to_const(y ** 4 / (y ** 2 + 1) ** 2, 2) == (True, 1)
    flag, c = rf_is_nth_power_up_to_const(i * (y - 1) ** 2 * y ** 4, 2)
    assert flag and c == i
    assert rf_is_nth_power_up_to_const(2 * y ** 3, 2) == (False, None)
    assert rf_is_nth_power_up_to_const(y ** 2 / (y - 1) ** 6, 4)[0] is False


def test_class_representative():
    c, rep = nth_power_class(3 * y ** 5 / (y + 1) ** 3, 4)
    assert c == 3
    assert rep == Poly.var(QI) * (Poly.var(QI) + 1)


def test_gcd_and_division():
    a = (yp - 1) * (yp + i)
    b = (yp - 1) * (yp - 2)
    assert poly_gcd(a, b) == yp - 1
    q, r = (a * b + 3).divmod(b)
    assert q == a and r == 3


def random_poly(rng, field, deg):
    return Poly(field, [field([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(field.degree)])
                        for _ in range(deg + 1)])


def test_yun_reconstructs_500_polys():
    rng = random.Random(7)
    for trial in range(500):
        field = QI if trial % 2 else QZETA8
        f = Poly(field, [1])
        for _ in range(rng.randint(1, 4)):
            f = f * random_poly(rng, field, rng.randint(0, 2)) ** rng.randint(1, 3)
        if f.is_zero() or f.degree > 12:
            f = random_poly(rng, field, rng.randint(1, 12))
        if f.is_zero():
            continue
        parts = squarefree_decomposition(f)
        prod = Poly(field, [f.lc()])
        for k, part in enumerate(parts, start=1):
            assert poly_gcd(part, part.derivative()).degree == 0
            prod = prod * part ** k
        assert prod == f


def test_val_additive_at_100_places():
    rng = random.Random(11)
    for _ in range(100):
        a = QI([rng.randint(-4, 4), rng.randint(-4, 4)])
        p = Place.at(QI, a) if rng.random() < 0.9 else inf
        f = RatFunc(random_poly(rng, QI, 3) * (yp - a), random_poly(rng, QI, 2))
        g = RatFunc(random_poly(rng, QI, 2), (yp - a) ** 2 + 0)
        if f.is_zero() or g.is_zero():
            continue
        assert rf_val(f * g, p) == rf_val(f, p) + rf_val(g, p)


coef = st.integers(-6, 6)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coef, coef), min_size=1, max_size=5), st.sampled_from([2, 4]))
def test_nth_power_always_detected(cs, n):
    f = RatFunc(Poly(QI, [QI(list(c)) for c in cs]))
    if f.is_zero():
        return
    flag, c = rf_is_nth_power_up_to_const(f ** n, n)
    assert flag
    assert c == f.lc_ratio() ** n
