import random
from fractions import Fraction
from itertools import product

import pytest

from quartic_brauer.dyadic import (MU, Q2, Q2I, Q2SQRT2, Q2ZETA8, PrecisionError, build_point_P,
                                   build_point_Q, cores_quad, dy_nth_root, dy_square_class,
                                   dy_unit_part, dy_val, eval_B_at, hilbert_bruteforce, hilbert_q2,
                                   inv_restrict, is_square, lemma_l, obstruction_sum,
                                   square_equivalent)
from quartic_brauer.dyadic.field import dy_embed, dy_galois, from_nf, in_subfield
from quartic_brauer.dyadic.hilbert import cores_invariant
from quartic_brauer.exactalg import QM, QZETA8, embed, m_i, m_r4

HALF = Fraction(1, 2)
R2 = Q2SQRT2.named("sqrt2")


# -- fields and constants -------------------------------------------------------

def test_catalog_ramification():
    assert [K.e for K in (Q2, Q2I, Q2SQRT2, Q2ZETA8, MU)] == [1, 2, 2, 4, 8]
    assert all(K.f == 1 for K in (Q2, Q2I, Q2SQRT2, Q2ZETA8, MU))


def test_mu_constants_exact():
    i, r4, z8 = MU.named("i"), MU.named("r4"), MU.named("zeta8")
    assert i ** 2 == -1
    assert r4 ** 4 == 2
    assert z8 ** 2 == i
    assert dy_val(r4) == 2 and dy_val(z8 - 1) == 2      # zeta8-1 uniformizes Q2(zeta8)


def test_global_embeddings_compatible():
    assert from_nf(m_i(), MU) == MU.named("i")
    assert from_nf(m_r4(), MU) == MU.named("r4")
    assert from_nf(embed(QZETA8.gen, QM), MU) == MU.named("zeta8")


def test_galois_action():
    i, r4 = MU.named("i"), MU.named("r4")
    assert dy_galois(r4, "tau") == i * r4 and dy_galois(i, "tau") == i
    assert dy_galois(r4, "sigma") == -r4
    assert dy_galois(i, "rho") == -i and dy_galois(r4, "rho") == r4
    assert in_subfield(MU.named("zeta8"), Q2ZETA8) and not in_subfield(r4, Q2ZETA8)
    assert in_subfield(r4 ** 2, Q2SQRT2) and not in_subfield(i, Q2SQRT2)


def test_valuation_examples():
    assert dy_val(2 + 2 * R2) == 2
    assert dy_val(MU(2)) == 8
    assert dy_val(-24 * R2 - 32) == 7
    assert dy_val(dy_embed(-24 * R2 - 32, MU)) == 28
    u = dy_unit_part(2 + 2 * R2)
    assert dy_val(u) == 0 and u == 1 + R2


def test_valuation_undecidable():
    x = Q2SQRT2.elt([8, 0], prec=5)
    with pytest.raises(PrecisionError):
        dy_val(x)


def test_val_multiplicative_and_inverse():
    rng = random.Random(1)
    for K in (Q2I, Q2ZETA8, MU):
        for _ in range(20):
            x = K.elt([Fraction(rng.randint(-40, 40), rng.choice([1, 3, 5, 2, 4])) for _ in range(K.e)], 60)
            y = K.elt([rng.randint(-40, 40) for _ in range(K.e)], 60)
            if x.is_zero() or y.is_zero():
                continue
            assert dy_val(x * y) == dy_val(x) + dy_val(y)
            assert (x * (1 / x) - 1).is_zero()


def test_precision_is_printed():
    x = Q2SQRT2.elt([1, 1], prec=10)
    assert "O(sqrt2^10)" in str(x)


# -- roots --------------------------------------------------------------------------

def test_lemma_l():
    l, d = lemma_l(40)
    assert d == 1 - 8 * R2 * (3 + 2 * R2)
    assert (l ** 4 - d).is_zero()
    assert (l * l - (1 + 4 * R2 + 16 * R2 + 32)).val_lb() >= 11


def test_sqrt_examples():
    assert dy_nth_root(Q2(-7, 40), 2) is not None
    assert dy_nth_root(Q2(2, 40), 2) is None
    assert dy_nth_root(Q2(3, 40), 2) is None


def test_root_condition_selects():
    r = dy_nth_root(Q2(9, 40), 2, condition=lambda y: (y - 3).val_lb() >= 5)
    assert r == 3 or (r - 3).is_zero()
    r = dy_nth_root(Q2(9, 40), 2, condition=lambda y: (y + 3).val_lb() >= 5)
    assert (r + 3).is_zero()


def test_sqrt_precision_insufficient():
    with pytest.raises(PrecisionError):
        dy_nth_root(Q2SQRT2.elt([1, 0], prec=3), 2)


def test_hensel_repowering_property():
    rng = random.Random(7)
    count = 0
    while count < 100:
        K = rng.choice([Q2, Q2I, Q2SQRT2, Q2ZETA8])
        y = K.elt([rng.randint(-60, 60) for _ in range(K.e)], 48)
        if y.is_zero():
            continue
        n = rng.choice([2, 4])
        c = y ** n
        r = dy_nth_root(c, n)
        assert r is not None
        assert (r ** n - c).is_zero()
        count += 1


def test_localserre_property():
    """Every element of V^(m+e) (m >= 3) has a square root in V^(m), e = 2."""
    rng = random.Random(11)
    pi = Q2SQRT2.pi
    for _ in range(100):
        m = rng.randint(3, 8)
        w = Q2SQRT2.elt([rng.randint(-30, 30), rng.randint(-30, 30)])
        x = (1 + w * pi ** (m + 2)).with_prec(40)
        r = dy_nth_root(x, 2, condition=lambda y: (y - 1).val_lb() >= m)
        assert r is not None


def test_root_stability_N_vs_2N():
    l1, _ = lemma_l(40)
    l2, _ = lemma_l(80)
    assert (l1 - l2.with_prec(l1.prec)).is_zero()


# -- square classes -----------------------------------------------------------------

def test_square_class_counts():
    from quartic_brauer.dyadic.field import square_class_reps
    assert len(square_class_reps(Q2)) == 8
    assert len(square_class_reps(Q2I)) == 16
    assert len(square_class_reps(Q2SQRT2)) == 16


def test_uptosq_facts():
    l, _ = lemma_l()
    z0 = 1 + R2
    assert z0 ** 2 - 1 == 2 + 2 * R2
    assert square_equivalent(z0 ** 2 - 1, 1 + R2)
    assert square_equivalent(l * l + 1, 1 + 2 * R2)
    assert square_equivalent(z0 ** 2 - l * l, 1 - R2)
    assert dy_square_class(Q2(9, 40)) == 1


def test_square_class_rep_quotient_is_square():
    rng = random.Random(3)
    for _ in range(30):
        c = Q2SQRT2.elt([rng.randint(-99, 99), rng.randint(-99, 99)], 40)
        if c.is_zero():
            continue
        assert is_square(c / dy_square_class(c))


# -- Hilbert symbols ------------------------------------------------------------------

def test_hilbert_q2_examples():
    assert hilbert_q2(-1, -2) == HALF
    assert hilbert_q2(-2, -7) == 0
    assert all(hilbert_q2(1, b) == 0 for b in (2, -1, 3, Fraction(5, 7)))


def test_bruteforce_examples():
    assert hilbert_bruteforce(R2, -1 - 2 * R2, Q2SQRT2) == HALF
    assert hilbert_bruteforce(-1, -2) == HALF
    rng = random.Random(5)
    for _ in range(10):
        a = Q2SQRT2.elt([rng.randint(-50, 50) or 1, rng.randint(-50, 50)], 40)
        assert hilbert_bruteforce(a, -a, Q2SQRT2) == 0


def test_bruteforce_rejects_large_field():
    with pytest.raises(ValueError):
        hilbert_bruteforce(MU(2), MU(3), MU)


def _primitive_mod(a, b, m):
    M = 2 ** m
    return any((x % 2 or y % 2 or z % 2) and (z * z - a * x * x - b * y * y) % M == 0
               for x, y, z in product(range(M), repeat=3))


def test_bound_2e_plus_1_is_too_weak():
    """A primitive solution mod 8 exists for (2, 6), yet the symbol is 1/2."""
    assert hilbert_q2(2, 6) == HALF
    assert _primitive_mod(2, 6, 3)
    assert not _primitive_mod(2, 6, 5)
    assert hilbert_bruteforce(2, 6) == HALF


def _rand_rational(rng):
    return Fraction(rng.choice([-1, 1]) * rng.randint(1, 300), rng.randint(1, 40))


def test_bruteforce_matches_formula():
    rng = random.Random(2024)
    for _ in range(200):
        a, b = _rand_rational(rng), _rand_rational(rng)
        assert hilbert_bruteforce(a, b) == hilbert_q2(a, b), (a, b)


def test_bilinearity_over_q2sqrt2():
    rng = random.Random(99)
    pi = Q2SQRT2.pi

    def rand_elt():
        u = Q2SQRT2.elt([rng.randrange(1, 64, 2), rng.randint(-32, 32)])
        return (u * pi ** rng.randint(0, 3)).with_prec(40)

    for _ in range(100):
        a, b1, b2 = rand_elt(), rand_elt(), rand_elt()
        lhs = hilbert_bruteforce(a, b1 * b2, Q2SQRT2)
        rhs = (hilbert_bruteforce(a, b1, Q2SQRT2) + hilbert_bruteforce(a, b2, Q2SQRT2)) % 1
        assert lhs == rhs


def test_cores_quad_examples():
    assert cores_quad(2, 1, 1) == [(1, -2), (-1, -1)]
    assert cores_invariant(2, 1, 1) == HALF
    assert cores_quad(2, -1, -2) == [(-1, -2), (-2, -7)]
    assert cores_invariant(2, -1, -2) == HALF
    with pytest.raises(ValueError):
        cores_quad(2, 1, 0)


def test_cores_quad_consistency():
    rng = random.Random(8)
    for _ in range(50):
        a, b = rng.choice([-1, 1]) * rng.randint(1, 60), rng.choice([-1, 1]) * rng.randint(1, 60)
        lhs = hilbert_bruteforce(R2, a + b * R2, Q2SQRT2)
        rhs = (hilbert_q2(a, -2) + hilbert_q2(-a * b, a * a - 2 * b * b)) % 1
        assert lhs == rhs, (a, b)


def test_inv_restrict():
    assert inv_restrict(HALF, 4) == 0
    assert inv_restrict(HALF, 3) == HALF
    assert inv_restrict(Fraction(1, 4), 2) == HALF
    with pytest.raises(ValueError):
        inv_restrict(HALF, 0)


# -- the obstruction ------------------------------------------------------------------

def test_points_on_surface():
    assert build_point_P().on_surface()
    assert build_point_Q().on_surface()


def test_eval_at_Q():
    inv, log, _ = eval_B_at(build_point_Q())
    assert inv == 0
    assert all(r["verified"] for r in log.records)


def test_eval_at_P_chain():
    inv, log, checks = eval_B_at(build_point_P())
    assert inv == HALF
    rules = [r["rule"] for r in log.records]
    assert rules[-1] == "R4" and "identity" in rules and "R3" in rules and "R2" in rules
    assert all(r["verified"] for r in log.records)
    assert set(checks.values()) == {HALF}


def test_obstruction_sum_stable():
    rep = obstruction_sum(40)
    assert rep.total == HALF and rep.inv_P == HALF and rep.inv_Q == 0
    assert rep.stable
