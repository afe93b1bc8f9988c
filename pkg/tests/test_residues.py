import random

import pytest

from quartic_brauer.exactalg import QI, QM, QZETA8, embed, zeta8_sqrt2
from quartic_brauer.funcfield import RatFunc
from quartic_brauer.geometry import F, G, get_line, line_catalog, vertical_val_res
from quartic_brauer.reference import expected_string
from quartic_brauer.residues import (
    ATOMS, GEOMETRIC, BrauerElement, Symbol, TrackedElt, brauer_residue, catalog_elements,
    faddeev_solve, purity_scan, residue_table, square_class_label, square_equivalent,
    symbol, table_mismatches, tame_residue,
)

EL = catalog_elements()
T = TrackedElt.atom
i = QI.gen
r2 = zeta8_sqrt2()


def test_catalog_shapes():
    assert [str(s) for s in EL["A"].terms] == ["(F*G,(t+1))_2", "(F,(t+i))_2"]
    assert EL["x2"].terms == EL["D"].terms + (Symbol(2, T("a"), T("F")), Symbol(2, T("b"), T("G")))
    assert EL["E1"].terms == EL["E"].terms + (Symbol(2, TrackedElt(1 + i), T("t+i") * T("G")),)
    assert EL["Z"].terms == (Symbol(4, T("t"), T("F") ** 2 * T("G")),)


def test_worked_residues_at_l5():
    s = Symbol(2, T("F"), T("t+i"))
    geo = tame_residue(s, 5, GEOMETRIC)
    assert geo.is_trivial()
    ari = tame_residue(s, 5, QZETA8)
    # the class of (t+i) restricted to l5, i.e. 1+i
    assert square_equivalent(ari.constant, embed(1 + i, QZETA8))
    assert not ari.is_trivial()
    s2 = Symbol(2, T("F") * T("G"), T("t+1"))
    assert tame_residue(s2, 5, GEOMETRIC).is_trivial()
    assert tame_residue(s2, 5, QZETA8).is_trivial()


def test_b_G_at_l13():
    r = tame_residue(Symbol(2, T("b"), T("G")), 13, QZETA8)
    assert r.exp_b == 1 and r.exp_a == 0 and r.constant == 1 and r.func.degree == 0


def test_x2_at_l13_is_sqrt2_b():
    r = brauer_residue(EL["x2"], 13, QZETA8).to_mu2()
    assert r.exp_b == 1 and r.exp_a == 0
    assert square_equivalent(r.constant, r2)


def test_Z_at_l1():
    assert brauer_residue(EL["Z"], 1, GEOMETRIC).is_trivial()
    # t^4 / (F^2 G) restricted to l1 is y^4
    y = RatFunc.var(QI)
    vF, sF = vertical_val_res(F, 1)
    vG, sG = vertical_val_res(G, 1)
    assert 2 * vF + vG == 4
    assert 1 / (sF ** 2 * sG) == y ** 4 / ((i - 1) ** 2 * i / 2) ** 1 / y ** 4 * y ** 4
    assert (sF ** 2 * sG) == ((i - 1) ** 2 * i / 2) / y ** 4


@pytest.mark.parametrize("name", ["A", "D", "E"])
def test_geometric_purity(name):
    assert purity_scan(EL[name]) == []


def test_purity_of_sum():
    assert purity_scan(EL["A"] + EL["D"]) == []


def test_A_is_ramified_arithmetically():
    assert purity_scan(EL["A"], QZETA8) != []


def test_tables_match_golden():
    for v in ("x1", "x2", "x3"):
        assert table_mismatches(v) == []


def test_table_examples():
    x1 = residue_table("x1")
    assert (x1[20].value.exp_a, x1[20].value.exp_b) == (1, 1) and square_equivalent(x1[20].value.constant, QZETA8(1))
    x2 = residue_table("x2")
    assert x2[16].value.exp_b == 1 and square_equivalent(x2[16].value.constant, 2 * embed(i, QZETA8) * r2)
    assert residue_table("x3")[9].value.is_trivial()
    assert expected_string("x2", 17) == "2*i*sqrt2*b"


def test_table_x1_with_trivial_params_is_A():
    table = residue_table("x1")
    for line in line_catalog():
        via_table = table[line.id - 1].value
        direct = brauer_residue(EL["A"], line, QZETA8)
        # drop the a, b exponents: a = b = 1
        assert square_equivalent(via_table.constant, direct.constant)


def test_faddeev_A():
    res = faddeev_solve("A", QZETA8)
    assert square_equivalent(res.forced_a, QZETA8(1))
    assert square_equivalent(res.forced_b, embed(1 + i, QZETA8))
    assert set(res.fiber_chars) == {"-i", "inf"}
    assert square_equivalent(res.fiber_chars["-i"], r2 * embed(1 + i, QZETA8))
    assert square_equivalent(res.fiber_chars["inf"], embed(1 + i, QZETA8))
    assert square_equivalent(res.obstruction_class, r2)
    assert res.descends is False
    assert res.summary()["obstruction_class"] == "sqrt2"


@pytest.mark.parametrize("variant", ["D", "E"])
def test_faddeev_D_E_inconsistent(variant):
    res = faddeev_solve(variant, QZETA8)
    assert not res.consistent and not res.descends
    assert square_equivalent(res.obstruction_class, r2)


@pytest.mark.parametrize("variant", ["A", "D", "E"])
def test_faddeev_over_M(variant):
    assert faddeev_solve(variant, QM).descends


@pytest.mark.parametrize("name", ["B", "D", "E1"])
def test_arithmetic_purity_over_M(name):
    assert purity_scan(EL[name], QM) == []


def test_square_class_labels():
    assert square_class_label(QZETA8(2)) == "1"
    assert square_class_label(r2 * 3 ** 2) == "sqrt2"


def _random_tracked(rng):
    ex = {a: rng.randint(-2, 2) for a in rng.sample(ATOMS, 3)}
    const = QI([rng.choice([1, 2, 3, -1]), rng.choice([0, 1])])
    return TrackedElt(const, ex, {"a": rng.randint(0, 1)})


def test_bilinearity_50_triples():
    rng = random.Random(1)
    lines = line_catalog()
    for _ in range(50):
        a, b, c = (_random_tracked(rng) for _ in range(3))
        n = rng.choice([2, 4])
        for line in rng.sample(lines, 6):
            lhs = tame_residue(Symbol(n, a, b * c), line, QZETA8)
            r1 = tame_residue(Symbol(n, a, b), line, QZETA8)
            r2_ = tame_residue(Symbol(n, a, c), line, QZETA8)
            prod = brauer_residue(BrauerElement((Symbol(n, a, b), Symbol(n, a, c))), line, QZETA8)
            assert lhs.equivalent(prod)
            assert r1.n == r2_.n == n


def test_squaring_rule_every_line():
    rng = random.Random(2)
    for _ in range(5):
        a, b = _random_tracked(rng), _random_tracked(rng)
        for line in line_catalog():
            four = tame_residue(Symbol(4, a, b ** 2), line, QZETA8)
            two = tame_residue(Symbol(2, a, b), line, QZETA8)
            assert four.to_mu2().equivalent(two)


def test_geometric_mode_is_coarser():
    rng = random.Random(4)
    for _ in range(20):
        a, b = _random_tracked(rng), _random_tracked(rng)
        for line in line_catalog():
            s = Symbol(2, a, b)
            if tame_residue(s, line, QZETA8).is_trivial():
                assert tame_residue(s, line, GEOMETRIC).is_trivial()


def test_mode_validation():
    with pytest.raises(ValueError):
        tame_residue(Symbol(2, T("F"), T("G")), 13, QI)
    with pytest.raises(ValueError):
        Symbol(3, T("F"), T("G"))
