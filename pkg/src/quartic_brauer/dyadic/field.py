"""Totally ramified extensions of Q_2 and finite-precision elements.

Every field in the catalog is Q_2(pi) with pi a root of an Eisenstein
polynomial of degree e (so f = 1 and e is the degree).  An element is a
vector of rational digits c_j (j < e) meaning sum c_j pi^j, together with an
absolute precision N: the element is known modulo pi^N.  Because the pi^j
have distinct valuations mod e, v(x) = min_j (e*v_2(c_j) + j) exactly.

Catalog constants (i, sqrt2, zeta8, 2^(1/4)) have exact rational digits and
carry infinite precision.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache
from itertools import product

from ..exactalg import NFElement

INF = math.inf


class PrecisionError(ArithmeticError):
    """Raised when the working precision cannot decide a valuation or root."""


def default_precision():
    """Working precision in uniformizer units (env QB_PRECISION, default 40)."""
    return int(os.environ.get("QB_PRECISION", "40"))


def v2(q: Fraction):
    if q == 0:
        return INF
    n, d = q.numerator, q.denominator
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    while d % 2 == 0:
        d //= 2
        v -= 1
    return v


def mod_pow2(c: Fraction, k) -> Fraction:
    """Canonical representative of c modulo 2^k (k may be negative)."""
    if c == 0 or k == INF:
        return c
    s = v2(c)
    if s >= k:
        return Fraction(0)
    n, d = c.numerator, c.denominator
    if s >= 0:
        n >>= s
    else:
        d >>= -s
    m = 1 << (k - s)
    r = (n * pow(d, -1, m)) % m
    return Fraction(r) * Fraction(2) ** s


class DyadicField:
    def __init__(self, label, eisenstein, pi_name, description):
        self.label = label
        self.eisenstein = tuple(int(c) for c in eisenstein)   # low-to-high, monic
        self.e = len(eisenstein) - 1
        self.f = 1
        self.degree = self.e
        self.pi_name = pi_name
        self.description = description
        e = self.e
        # pi^k for e <= k < 2e-1 in the pi basis
        table = []
        cur = [Fraction(-c) for c in self.eisenstein[:-1]]
        for _ in range(max(e - 1, 0)):
            table.append(cur)
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [cur[j] - top * self.eisenstein[j] for j in range(e)]
        self._table = table
        self._named = {}

    def __repr__(self):
        return f"DyadicField({self.label})"

    def elt(self, digits, prec=INF):
        digits = [Fraction(c) for c in digits]
        digits += [Fraction(0)] * (self.e - len(digits))
        return DyadicElt(self, digits, prec)

    def __call__(self, q, prec=INF):
        if isinstance(q, DyadicElt):
            return dy_embed(q, self)
        if isinstance(q, NFElement):
            return from_nf(q, self, prec)
        return self.elt([q], prec)

    @property
    def pi(self):
        return self.elt([0, 1]) if self.e > 1 else self.elt([2])

    def named(self, name):
        """Exact catalog constants: 'i', 'sqrt2', 'zeta8', 'r4'."""
        try:
            return self._named[name]()
        except KeyError:
            raise ValueError(f"{self.label} has no constant {name!r}") from None


class DyadicElt:
    __slots__ = ("field", "digits", "prec")

    def __init__(self, field: DyadicField, digits, prec=INF):
        self.field = field
        self.prec = prec
        e = field.e
        if prec == INF:
            self.digits = tuple(digits)
        else:
            self.digits = tuple(mod_pow2(c, math.ceil((prec - j) / e)) for j, c in enumerate(digits))

    # -- valuation ------------------------------------------------------------

    def _val_raw(self):
        e = self.field.e
        return min((e * v2(c) + j for j, c in enumerate(self.digits) if c), default=INF)

    def is_zero(self):
        """True when the element is 0 modulo its precision."""
        return not any(self.digits)

    def val(self):
        v = self._val_raw()
        if v == INF:
            if self.prec == INF:
                return INF
            raise PrecisionError(f"valuation undecidable: element is O({self.field.pi_name}^{self.prec})")
        return v

    def val_lb(self):
        v = self._val_raw()
        return min(v, self.prec)

    def unit_part(self):
        v = self.val()
        return self * self.field.pi ** (-v)

    def with_prec(self, prec):
        return DyadicElt(self.field, self.digits, min(prec, self.prec))

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, DyadicElt):
            if other.field is not self.field:
                raise ValueError(f"field mismatch {self.field.label} vs {other.field.label}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.elt([other])
        if isinstance(other, NFElement):
            return from_nf(other, self.field)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return DyadicElt(self.field, [a + b for a, b in zip(self.digits, other.digits)],
                         min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return DyadicElt(self.field, [-a for a in self.digits], self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _mul_digits(self, other):
        e = self.field.e
        prod = [Fraction(0)] * (2 * e - 1)
        for i, a in enumerate(self.digits):
            if a:
                for j, b in enumerate(other.digits):
                    if b:
                        prod[i + j] += a * b
        res = prod[:e]
        for k, c in enumerate(prod[e:]):
            if c:
                row = self.field._table[k]
                for j in range(e):
                    res[j] += c * row[j]
        return res

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prec = min(self.prec + other.val_lb(), other.prec + self.val_lb())
        return DyadicElt(self.field, self._mul_digits(other), prec)

    __rmul__ = __mul__

    def inverse(self):
        v = self.val()
        if v == INF:
            raise ZeroDivisionError("inverse of zero")
        e = self.field.e
        cols = []
        basis = self.field.elt([1])
        pi = self.field.elt([0, 1]) if e > 1 else None
        for _ in range(e):
            cols.append(self._mul_digits(basis))
            if pi is not None:
                basis = DyadicElt(self.field, basis._mul_digits(pi))
        mat = [[cols[j][r] for j in range(e)] + [Fraction(int(r == 0))] for r in range(e)]
        for col in range(e):
            piv = next(r for r in range(col, e) if mat[r][col] != 0)
            mat[col], mat[piv] = mat[piv], mat[col]
            inv = 1 / mat[col][col]
            mat[col] = [x * inv for x in mat[col]]
            for r in range(e):
                if r != col and mat[r][col] != 0:
                    fct = mat[r][col]
                    mat[r] = [a - fct * b for a, b in zip(mat[r], mat[col])]
        return DyadicElt(self.field, [mat[r][e] for r in range(e)], self.prec - 2 * v)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.elt([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison and display ------------------------------------------------

    def congruent(self, other, n):
        """x == y mod pi^n (n must not exceed the known precision)."""
        d = self - other
        if d.prec < n:
            raise PrecisionError(f"precision {d.prec} < {n}")
        return d.val_lb() >= n

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, DyadicElt, NFElement)):
            d = self - self._coerce(other)
            return d.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.field.label, self.digits))

    def key(self, n):
        """Hashable residue modulo pi^n (requires an integral element)."""
        e = self.field.e
        return tuple(int(mod_pow2(c, math.ceil((n - j) / e))) for j, c in enumerate(self.digits))

    def __repr__(self):
        return f"{self.field.label}({self})"

    def __str__(self):
        return format_dyadic(self)


def format_dyadic(x: DyadicElt) -> str:
    name = x.field.pi_name
    terms = []
    for j, c in enumerate(x.digits):
        if not c:
            continue
        if j == 0:
            terms.append(str(c))
        else:
            mono = name if j == 1 else f"{name}^{j}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    body = "+".join(terms).replace("+-", "-") or "0"
    if x.prec == INF:
        return body
    return f"{body} + O({name}^{x.prec})"


# -----------------------------------------------------------------------------
# Catalog
# -----------------------------------------------------------------------------

Q2 = DyadicField("Q2", (-2, 1), "2", "2-adic numbers, pi = 2")
Q2I = DyadicField("Q2(i)", (2, -2, 1), "pi", "pi = 1+i, i = pi-1")
Q2SQRT2 = DyadicField("Q2(sqrt2)", (-2, 0, 1), "sqrt2", "pi = sqrt2")
Q2ZETA8 = DyadicField("Q2(zeta8)", (2, 4, 6, 4, 1), "pi", "Q2(i,sqrt2), pi = zeta8-1")
MU = DyadicField("M_u", (18, -72, 140, -168, 138, -80, 32, -8, 1), "pi",
                 "Q2(i,2^(1/4)), e = 8, pi = (zeta8-1)/2^(1/4)+1")

DYADIC_CATALOG = {K.label: K for K in (Q2, Q2I, Q2SQRT2, Q2ZETA8, MU)}

_F = Fraction
_MU_I = MU.elt([-9, _F(68, 3), _F(-86, 3), _F(68, 3), _F(-37, 3), 4, _F(-2, 3), 0])
_MU_R4 = MU.elt([-16, _F(178, 3), _F(-299, 3), _F(305, 3), -70, _F(98, 3), _F(-28, 3), _F(4, 3)])
_MU_Z8 = 1 + _MU_R4 * (MU.pi - 1)

Q2I._named = {"i": lambda: Q2I.elt([-1, 1])}
Q2SQRT2._named = {"sqrt2": lambda: Q2SQRT2.elt([0, 1])}
Q2ZETA8._named = {
    "zeta8": lambda: Q2ZETA8.elt([1, 1]),
    "i": lambda: Q2ZETA8.elt([1, 1]) ** 2,
    "sqrt2": lambda: Q2ZETA8.elt([1, 1]) - Q2ZETA8.elt([1, 1]) ** 3,
}
MU._named = {"i": lambda: _MU_I, "r4": lambda: _MU_R4, "zeta8": lambda: _MU_Z8,
             "sqrt2": lambda: _MU_R4 ** 2}

# exact sanity checks of the hard-coded constants
assert _MU_I ** 2 == -1 and _MU_R4 ** 4 == 2 and _MU_Z8 ** 2 == _MU_I
assert _MU_Z8 - _MU_Z8 ** 3 == _MU_R4 ** 2
assert Q2ZETA8.named("sqrt2") ** 2 == 2


# image of the source uniformizer in a bigger field
def _pi_image(src: DyadicField, dst: DyadicField):
    if src is Q2:
        return dst.elt([2])
    if src is Q2I:
        return dst.named("i") + 1
    if src is Q2SQRT2:
        return dst.named("sqrt2")
    if src is Q2ZETA8:
        return dst.named("zeta8") - 1
    raise ValueError(f"no embedding {src.label} -> {dst.label}")


_EMBEDS = {("Q2", k) for k in DYADIC_CATALOG} | {
    ("Q2(i)", "Q2(zeta8)"), ("Q2(i)", "M_u"), ("Q2(sqrt2)", "Q2(zeta8)"),
    ("Q2(sqrt2)", "M_u"), ("Q2(zeta8)", "M_u")}


def dy_embed(x: DyadicElt, dst: DyadicField) -> DyadicElt:
    src = x.field
    if src is dst:
        return x
    if (src.label, dst.label) not in _EMBEDS:
        raise ValueError(f"no embedding {src.label} -> {dst.label}")
    img = _pi_image(src, dst)
    acc = dst.elt([0])
    for c in reversed(x.digits):
        acc = acc * img + c
    prec = x.prec * dst.e // src.e if x.prec != INF else INF
    return acc.with_prec(prec)


_NF_GEN = {
    "Q(i)": lambda K: K.named("i"),
    "Q(sqrt2)": lambda K: K.named("sqrt2"),
    "Q(zeta8)": lambda K: K.named("zeta8"),
    "M": lambda K: K.named("r4") + K.named("i"),
}


def from_nf(x: NFElement, K: DyadicField, prec=INF) -> DyadicElt:
    """Image of a global catalog element under the fixed 2-adic embedding."""
    if x.is_rational():
        return K.elt([x.to_fraction()], prec)
    gen = _NF_GEN[x.field.label](K)
    acc = K.elt([0])
    for c in reversed(x.coeffs):
        acc = acc * gen + c
    return acc.with_prec(prec)


def dy_val(x: DyadicElt):
    return x.val()


def dy_unit_part(x: DyadicElt):
    return x.unit_part()


def dy_arith(op, x, y):
    return {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__, "div": x.__truediv__}[op](y)


# -----------------------------------------------------------------------------
# Roots
# -----------------------------------------------------------------------------

def _start_values(K):
    """Units sum_{j<=e} b_j pi^j with b_0 = 1, b_j in {0,1}."""
    e = K.e
    pi = K.pi
    pw = [K.elt([1])]
    for _ in range(e):
        pw.append(pw[-1] * pi)
    out = []
    for bits in product((0, 1), repeat=e):
        y = pw[0]
        for b, p in zip(bits, pw[1:]):
            if b:
                y = y + p
        out.append(y)
    return out


def _unit_sqrts(u: DyadicElt):
    """All square roots of the unit u, to precision prec(u) - e."""
    K = u.field
    e = K.e
    P = u.prec
    if P == INF:
        P = max(default_precision(), 2 * e + 1)
        u = u.with_prec(P)
    if P < 2 * e + 1:
        raise PrecisionError(f"need precision >= {2 * e + 1} for square roots in {K.label}")
    exact_u = DyadicElt(K, u.digits)
    roots = []
    for y0 in _start_values(K):
        if (y0 * y0 - exact_u).val_lb() < 2 * e + 1:
            continue
        y = y0
        for _ in range(200):
            delta = y * y - exact_u
            if delta.val_lb() >= P:
                break
            y = DyadicElt(K, (y - delta / (2 * y)).digits)
            y = DyadicElt(K, y.with_prec(P + e).digits)
        else:
            raise PrecisionError("Newton iteration did not converge")
        root = y.with_prec(P - e)
        if not any((root - r).is_zero() for r in roots):
            roots.append(root)
    return roots


def _sqrts(c: DyadicElt):
    v = c.val()
    if v % 2:
        return []
    if v == 0:
        return _unit_sqrts(c)
    pi = c.field.pi
    u = c * pi ** (-v)
    return [r * pi ** (v // 2) for r in _unit_sqrts(u)]


def dy_nth_roots(c: DyadicElt, n: int):
    """All n-th roots (n in {1,2,4}) of c, to the precision the data allows."""
    if n == 1:
        return [c]
    if n not in (2, 4):
        raise ValueError("n must be 2 or 4")
    roots = _sqrts(c)
    if n == 4:
        out = []
        for r in roots:
            for s in _sqrts(r):
                if not any((s - t).is_zero() for t in out):
                    out.append(s)
        roots = out
    return roots


def dy_nth_root(c: DyadicElt, n: int, condition=None):
    """An n-th root of c satisfying ``condition`` (if given), or None.

    Every returned root is re-powered and compared with c within the
    root's precision.
    """
    for r in dy_nth_roots(c, n):
        check = r ** n - c
        if not check.is_zero():
            raise PrecisionError("root failed re-powering check")
        if condition is None or condition(r):
            return r
    return None


@lru_cache(maxsize=None)
def _unit_square_keys(label):
    K = DYADIC_CATALOG[label]
    m = 2 * K.e + 1
    return frozenset((y * y).key(m) for y in _start_values(K))


def is_square(c: DyadicElt) -> bool:
    """Squareness test: a unit is a square iff it is one modulo pi^(2e+1)."""
    v = c.val()
    if v % 2:
        return False
    u = c * c.field.pi ** (-v)
    m = 2 * c.field.e + 1
    if u.prec < m:
        raise PrecisionError(f"need precision >= {m} to test squares")
    return u.key(m) in _unit_square_keys(c.field.label)


# -----------------------------------------------------------------------------
# Square classes
# -----------------------------------------------------------------------------

def _encode_unit(K, bits):
    y = K.elt([1])
    pk = K.elt([1])
    for b in bits:
        pk = pk * K.pi
        if b:
            y = y + pk
    return y


@lru_cache(maxsize=None)
def _square_class_reps(label):
    K = DYADIC_CATALOG[label]
    e = K.e
    if e > 4:
        raise ValueError("square-class table only precomputed for e <= 4")
    reps = []
    for code in range(2 ** (2 * e)):
        bits = [(code >> j) & 1 for j in range(2 * e)]
        u = _encode_unit(K, bits)
        if not any(is_square(u / r) for r in reps):
            reps.append(u)
    return tuple(reps + [r * K.pi for r in reps])


def square_class_reps(K: DyadicField):
    """Exact representatives of K*/K*^2: units 1 + sum b_j pi^j (j <= 2e), times 1 or pi."""
    return _square_class_reps(K.label)


def dy_square_class(c: DyadicElt) -> DyadicElt:
    """The catalog representative r with c/r a square."""
    for r in square_class_reps(c.field):
        if is_square(c / r):
            return r
    raise PrecisionError("no representative matched")


def square_equivalent(x: DyadicElt, y: DyadicElt) -> bool:
    return is_square(x / y)


# -----------------------------------------------------------------------------
# Galois action (used to certify that a value lies in a subfield)
# -----------------------------------------------------------------------------

def _pi_images():
    i, r4, z8, pi = _MU_I, _MU_R4, _MU_Z8, MU.pi
    z8_inv = z8 ** 7
    return {
        # r4 -> i*r4, i fixed (generates Gal(M_u / Q2(i)))
        ("M_u", "tau"): (-z8 - 1) / (i * r4) + 1,
        # r4 -> -r4, i fixed (generates Gal(M_u / Q2(zeta8)))
        ("M_u", "sigma"): 2 - pi,
        # i -> -i, r4 fixed
        ("M_u", "rho"): (z8_inv - 1) / r4 + 1,
        # i -> -i on Q2(zeta8) (generates Gal(Q2(zeta8) / Q2(sqrt2)))
        ("Q2(zeta8)", "rho"): Q2ZETA8.named("zeta8") ** 7 - 1,
        # i -> -i on Q2(i), so pi = 1+i -> 1-i
        ("Q2(i)", "rho"): 1 - Q2I.named("i"),
    }


_AUT = _pi_images()


def _eval_at(x: DyadicElt, img: DyadicElt):
    acc = x.field.elt([0])
    for c in reversed(x.digits):
        acc = acc * img + c
    return acc.with_prec(x.prec)


for (_label, _name), _img in _AUT.items():
    _K = DYADIC_CATALOG[_label]
    _ev = _K.elt([0])
    for _c in reversed(_K.eisenstein):
        _ev = _ev * _img + _c
    assert _ev == 0, (_label, _name)


def dy_galois(x: DyadicElt, name: str) -> DyadicElt:
    """Apply the named automorphism ('tau', 'sigma', 'rho')."""
    try:
        img = _AUT[(x.field.label, name)]
    except KeyError:
        raise ValueError(f"no automorphism {name!r} on {x.field.label}") from None
    return _eval_at(x, img)


_FIXERS = {
    ("M_u", "Q2(i)"): ("tau",),
    ("M_u", "Q2(zeta8)"): ("sigma",),
    ("M_u", "Q2(sqrt2)"): ("sigma", "rho"),
    ("Q2(zeta8)", "Q2(sqrt2)"): ("rho",),
    ("Q2(i)", "Q2"): ("rho",),
}


def in_subfield(x: DyadicElt, sub: DyadicField) -> bool:
    """Is x fixed by Gal(x.field / sub) (up to the known precision)?"""
    if sub is x.field:
        return True
    names = _FIXERS[(x.field.label, sub.label)]
    return all((dy_galois(x, n) - x).is_zero() for n in names)


def dy_norm(x: DyadicElt, sub: DyadicField) -> DyadicElt:
    """Norm down a quadratic step: M_u/Q2(zeta8) or Q2(zeta8)/Q2(sqrt2)."""
    pairs = {("M_u", "Q2(zeta8)"): "sigma", ("Q2(zeta8)", "Q2(sqrt2)"): "rho"}
    name = pairs.get((x.field.label, sub.label))
    if name is None:
        raise ValueError(f"norm {x.field.label} -> {sub.label} not supported")
    return x * dy_galois(x, name)
