import random

import pytest

from quartic_brauer.exactalg import QI, QZETA8, QSQRT2
from quartic_brauer.funcfield import RatFunc
from quartic_brauer.geometry import (
    F, G, INFINITY, T, TRACKED, ZERO, ECPoint, SurfacePoint, ec_arith, eval_funcs,
    get_line, legendre_curve, line_catalog, restrict, t_shift, verify_identity,
    vertical_divisor, vertical_val_res,
)

i = QI.gen
yv = RatFunc.var(QI)

G_DIV = {1: 2, 2: 2, 5: 1, 8: 1, 9: 1, 12: 1, 13: 1, 16: 1, 17: 1, 20: 1,
         21: -3, 22: -3, 23: -3, 24: -3}
F_DIV = {1: 1, 2: 2, 4: 1, 5: 1, 8: 1, 9: 1, 12: 1, 21: -3, 22: -2, 23: -2, 24: -1}


def test_catalog_shape():
    lines = line_catalog()
    assert len(lines) == 24
    assert [l.id for l in lines] == list(range(1, 25))
    assert get_line(5).equations == "x=z, y=w" and get_line(5).fiber == 1
    assert get_line(13).equations == "w=ax, z=ay"
    assert get_line(13).fiber == QZETA8.gen ** 2 and get_line(13).base_field is QZETA8
    assert get_line(21).equations == "x=iy, z=w" and get_line(21).fiber is None


def test_lines_lie_on_surface_and_fibre():
    for line in line_catalog():
        x, y, z = line.point()
        assert x ** 4 - y ** 4 == z ** 4 - 1
        if line.fiber is not None:
            assert x ** 2 - y ** 2 == line.fiber * (z ** 2 - 1)
            expected = ZERO if line.fiber == 0 else line.fiber
            assert restrict(T, line) == expected
        else:
            assert z ** 2 - 1 == 0
            assert restrict(T, line) == INFINITY


def test_restrict_examples():
    assert restrict(T, 5) == 1
    assert restrict(G / T ** 2, 1) == i / (2 * yv ** 2)
    assert restrict(G, 1) == ZERO


@pytest.mark.parametrize("line,v,sbar", [
    (1, 2, i / (2 * yv ** 2)), (2, 2, -i / (2 * yv ** 2)),
    (3, 0, 2 * i * yv ** 2), (4, 0, -2 * i * yv ** 2),
    (21, -3, RatFunc.const(QI, -1)), (22, -3, RatFunc.const(QI, -1)),
    (23, -3, RatFunc.const(QI, -1)), (24, -3, RatFunc.const(QI, -1)),
])
def test_appendix_values_for_G(line, v, sbar):
    assert vertical_val_res(G, line) == (v, sbar)


@pytest.mark.parametrize("line,v,sbar", [
    (1, 1, (i - 1) / yv), (2, 2, (i - 1) * yv / 2),
    (3, 0, -2 * (1 - i) * yv), (4, 1, (1 - i) * yv ** 3),
])
def test_appendix_values_for_F(line, v, sbar):
    assert vertical_val_res(F, line) == (v, sbar)


def test_F_at_infinity_line():
    v, sbar = vertical_val_res(F, 21)
    assert v == -3
    assert sbar == (-2 - 2 * i) / yv


def test_shift_val_res():
    assert vertical_val_res(t_shift(-1), 5) == (0, RatFunc.const(QI, 2))


def test_divisors():
    dG = vertical_divisor(G)
    dF = vertical_divisor(F)
    assert {k: v for k, v in dG.items() if v} == G_DIV
    assert {k: v for k, v in dF.items() if v} == F_DIV
    dFG = vertical_divisor(F * G)
    assert all(dFG[k] == dF[k] + dG[k] for k in dFG)


@pytest.mark.parametrize("name", ["FG_affine", "C_model", "tau_to_E", "trul_quadric",
                                  "E_generators", "A_forms"])
def test_identities_hold(name):
    assert verify_identity(name)


def test_printed_G_exponent_is_not_an_identity():
    assert not verify_identity("G_printed_exponent4")


def test_unknown_identity():
    with pytest.raises(KeyError):
        verify_identity("nope")


def _torsion_points(tv):
    c = (tv ** 2 - 1) / (tv ** 2 + 1)
    d = 2 * tv / (tv ** 2 + 1)
    E = legendre_curve(c)
    return E, ECPoint(E, c, c * c + c), ECPoint(E, d - 1, QI.gen * d * (d - 1))


def test_group_law_examples():
    t = RatFunc.var(QI)
    E, p1, p2 = _torsion_points(t)
    zero = RatFunc.const(QI, 0)
    e1 = ECPoint(E, zero, zero)
    e2 = ECPoint(E, -((t ** 2 - 1) / (t ** 2 + 1)) ** 2, zero)
    assert ec_arith("double", ec_arith("double", p1)).is_infinity
    assert ec_arith("double", p1) == e1
    assert ec_arith("double", e1).is_infinity
    assert ec_arith("add", e1, e2) == ECPoint(E, RatFunc.const(QI, -1), zero)
    assert E.contains(p2) and ec_arith("double", ec_arith("double", p2)).is_infinity


def test_group_law_properties_100_triples():
    rng = random.Random(3)
    done = 0
    while done < 100:
        tv = QI([rng.randint(-9, 9), rng.randint(-9, 9)])
        if (tv ** 2 + 1).is_zero() or (tv ** 2 - 1).is_zero() or tv.is_zero():
            continue
        E, p1, p2 = _torsion_points(tv)
        group = [E.infinity()]
        for a in range(4):
            for b in range(4):
                pt = E.infinity()
                for _ in range(a):
                    pt = pt + p1
                for _ in range(b):
                    pt = pt + p2
                group.append(pt)
        P, Q, R = (rng.choice(group) for _ in range(3))
        assert E.contains(P)
        assert (P + (-P)).is_infinity
        assert P + E.infinity() == P
        assert (P + Q) + R == P + (Q + R)
        done += 1


def test_divisor_additive_on_50_random_products():
    rng = random.Random(5)
    names = ["F", "G", "t", "t+1", "t-1", "t+i", "t-i"]
    divs = {n: vertical_divisor(TRACKED[n]) for n in names}
    for _ in range(50):
        exps = {n: rng.randint(-2, 2) for n in names}
        h = TRACKED["t"] ** 0
        for n, e in exps.items():
            h = h * TRACKED[n] ** e
        d = vertical_divisor(h)
        for k in d:
            assert d[k] == sum(e * divs[n][k] for n, e in exps.items())


def test_val_res_matches_divisor():
    for name in ("F", "G", "t+i"):
        h = TRACKED[name]
        d = vertical_divisor(h)
        for line in line_catalog():
            assert vertical_val_res(h, line)[0] == d[line.id]


def test_eval_at_Q():
    vals = eval_funcs(SurfacePoint(QI(2), QI(-1), QI(2)))
    assert vals["t"] == 1 and vals["u"] == 3 and vals["G"] == 8


def test_eval_at_real_quadratic_point():
    # z0 = 1 + sqrt2, so z0^2 - 1 = 2 + 2 sqrt2
    z0 = 1 + QSQRT2.gen
    assert z0 ** 2 - 1 == 2 + 2 * QSQRT2.gen
