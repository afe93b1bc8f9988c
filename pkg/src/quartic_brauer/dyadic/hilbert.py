"""Quadratic Hilbert symbols as local invariants in {0, 1/2}.

``hilbert_q2`` is the closed formula over Q_2.  ``hilbert_bruteforce``
decides solvability of z^2 = a x^2 + b y^2 directly: after scaling a, b to
valuation 0 or 1, a primitive solution modulo pi^(2e+3) lifts by Hensel's
lemma (some partial derivative has valuation at most e+1), so the search is
exact.  It enumerates the sets of squares modulo pi^(2e+3) and is limited to
e*f <= 4.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .field import DYADIC_CATALOG, Q2, DyadicElt, DyadicField, PrecisionError, v2

HALF = Fraction(1, 2)
MAX_BRUTEFORCE_DEGREE = 4


def inv_mod1(v) -> Fraction:
    return Fraction(v) % 1


def _odd_part_mod8(q: Fraction, s: int) -> int:
    n, d = q.numerator, q.denominator
    if s >= 0:
        n >>= s
    else:
        d >>= -s
    return (n * pow(d, -1, 8)) % 8


def hilbert_q2(a, b) -> Fraction:
    """Invariant of the quaternion algebra (a, b) over Q_2, a, b nonzero rationals."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero entries")
    alpha, beta = v2(a), v2(b)
    u, w = _odd_part_mod8(a, alpha), _odd_part_mod8(b, beta)
    eps = lambda x: ((x - 1) // 2) % 2
    omega = lambda x: ((x * x - 1) // 8) % 2
    exp = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
    return HALF if exp % 2 else Fraction(0)


@lru_cache(maxsize=None)
def _square_sets(label: str, m: int):
    """Keys of x^2 mod pi^m for x a unit, resp. a non-unit residue."""
    K = DYADIC_CATALOG[label]
    pi = K.pi
    pw = [K.elt([1])]
    for _ in range(m - 1):
        pw.append(pw[-1] * pi)
    units, nonunits = {}, {}
    for bits in product((0, 1), repeat=m):
        x = K.elt([0])
        for b, p in zip(bits, pw):
            if b:
                x = x + p
        sq = (x * x).with_prec(m)
        (units if bits[0] else nonunits).setdefault(sq.key(m), sq)
    return units, nonunits


def _normalize(a: DyadicElt, m: int) -> DyadicElt:
    v = a.val()
    a = a * a.field.pi ** (-2 * (v // 2))
    if a.prec < m:
        raise PrecisionError(f"need {m} digits after normalisation, have {a.prec}")
    return a.with_prec(m)


def _coerce(x, K):
    return x if isinstance(x, DyadicElt) else K(x)


def hilbert_bruteforce(a, b, K: DyadicField = Q2) -> Fraction:
    """Invariant of (a, b) over K by searching primitive solutions."""
    if K.e * K.f > MAX_BRUTEFORCE_DEGREE:
        raise ValueError(f"brute force limited to e*f <= {MAX_BRUTEFORCE_DEGREE}")
    m = 2 * K.e + 3
    a, b = _normalize(_coerce(a, K), m), _normalize(_coerce(b, K), m)
    units, nonunits = _square_sets(K.label, m)
    sx = [(s, True) for s in units.values()] + [(s, False) for s in nonunits.values()]
    a_side = {}
    for s, unit in sx:
        a_side.setdefault(((a * s).with_prec(m).key(m), unit), (a * s).with_prec(m))
    b_side = {}
    for s, unit in sx:
        b_side.setdefault(((b * s).with_prec(m).key(m), unit), (b * s).with_prec(m))
    for (_, ux), p in a_side.items():
        for (_, uy), q in b_side.items():
            k = (p + q).key(m)
            if k in units or ((ux or uy) and k in nonunits):
                return Fraction(0)
    return HALF


def cores_quad(d, a, b):
    """Corestriction of [sqrt d, a + b sqrt d] from K(sqrt d) to K.

    Returns the two symbols [a, -d] and [-ab, a^2 - d b^2] whose invariants
    add up to the invariant of the original symbol.
    """
    d, a, b = Fraction(d), Fraction(a), Fraction(b)
    if a == 0 or b == 0 or a * a - d * b * b == 0:
        raise ValueError("cores_quad needs a, b and a^2 - d b^2 nonzero")
    return [(a, -d), (-a * b, a * a - d * b * b)]


def cores_invariant(d, a, b) -> Fraction:
    """inv over K(sqrt d) of [sqrt d, a + b sqrt d] via ``cores_quad`` and hilbert_q2."""
    total = Fraction(0)
    for sym in cores_quad(d, a, b):
        total += hilbert_q2(*sym)
    return inv_mod1(total)


def inv_restrict(v, degree: int) -> Fraction:
    """Local invariant after restriction along an extension of the given degree."""
    if degree < 1:
        raise ValueError("degree must be positive")
    return inv_mod1(degree * Fraction(v))
