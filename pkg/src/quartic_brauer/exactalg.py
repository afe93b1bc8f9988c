"""Exact arithmetic over Q and a fixed catalog of small number fields.

Fields are Q[t]/(m(t)) with m monic and integral.  Elements are stored as an
integer numerator vector over a common positive denominator, which keeps the
inner loops on plain ``int`` arithmetic.

Catalog::

    QQ       Q                 m = t
    QI       Q(i)              m = t^2 + 1            t = i
    QSQRT2   Q(sqrt2)          m = t^2 - 2            t = sqrt2
    QZETA8   Q(zeta8)          m = t^4 + 1            t = a, a^2 = i
    QM       Q(i, 2^(1/4))     m = t^8+4t^6+2t^4+28t^2+1,  t = 2^(1/4) + i

Every field other than QQ is a quadratic extension of a catalog parent
(QM over QZETA8 over QI over QQ, QSQRT2 over QQ), which is what the exact
square-root routine walks down.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Optional

import sympy


class FieldMismatch(ValueError):
    pass


class NumberField:
    """A number field ``Q[t]/(min_poly)`` with a power-basis representation."""

    def __init__(self, label, min_poly, generator_name, tower_note=""):
        min_poly = tuple(int(c) for c in min_poly)
        if min_poly[-1] != 1:
            raise ValueError("min_poly must be monic")
        self.label = label
        self.min_poly = min_poly
        self.generator_name = generator_name
        self.tower_note = tower_note
        self.degree = len(min_poly) - 1
        d = self.degree
        # t^k for d <= k <= 2d-2 as integer vectors (monic => integral)
        table = []
        cur = [-c for c in min_poly[:-1]]
        for _ in range(max(d - 1, 0)):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [cur[j] - top * min_poly[j] for j in range(d)]
        self._reduce_table = table
        self._tower = None
        self._basis_names = None

    def __repr__(self):
        return f"NumberField({self.label})"

    # -- construction helpers ------------------------------------------------

    def __call__(self, value) -> "NFElement":
        if isinstance(value, NFElement):
            if value.field is self:
                return value
            return embed(value, self)
        if isinstance(value, (int, Fraction)):
            q = Fraction(value)
            num = [0] * self.degree
            num[0] = q.numerator
            return NFElement._make(self, num, q.denominator)
        if isinstance(value, (list, tuple)):
            if len(value) > self.degree:
                raise ValueError("too many coefficients")
            qs = [Fraction(c) for c in value] + [Fraction(0)] * (self.degree - len(value))
            den = 1
            for q in qs:
                den = den * q.denominator // gcd(den, q.denominator)
            return NFElement._make(self, [int(q * den) for q in qs], den)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self.label}")

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        if self.degree == 1:
            # Q is presented as Q[t]/(t): the generator is 0
            return self(0)
        return self([0, 1])


class NFElement:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=1):
        obj = NFElement._make(field, list(num), den)
        self.field, self.num, self.den = obj.field, obj.num, obj.den

    @staticmethod
    def _make(field, num, den):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = den
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if g != 1:
            num = [c // g for c in num]
            den //= g
        obj = object.__new__(NFElement)
        obj.field = field
        obj.num = tuple(num)
        obj.den = den
        return obj

    # -- basic protocol -------------------------------------------------------

    @property
    def coeffs(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self):
        return not any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.field.label, self.num, self.den))

    def __repr__(self):
        return f"{self.field.label}({format_element(self)})"

    def __str__(self):
        return format_element(self)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field.label} vs {other.field.label}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d1, d2 = self.den, other.den
        return NFElement._make(self.field, [a * d2 + b * d1 for a, b in zip(self.num, other.num)], d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return NFElement._make(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        field = self.field
        d = field.degree
        a, b = self.num, other.num
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        res = prod[:d]
        for k, ck in enumerate(prod[d:]):
            if ck:
                row = field._reduce_table[k]
                for j in range(d):
                    res[j] += ck * row[j]
        return NFElement._make(field, res, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in {self.field.label}")
        field = self.field
        d = field.degree
        if d == 1 or self.is_rational():
            return field(Fraction(self.den, self.num[0]))
        # columns of the multiplication-by-self matrix are self * t^j
        cols = []
        basis = field.one
        t = field.gen
        for _ in range(d):
            cols.append((self * basis).coeffs)
            basis = basis * t
        mat = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        return field(_solve(mat, d))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def _solve(mat, n):
    """Gauss-Jordan on an n x (n+1) augmented Fraction matrix."""
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = 1 / mat[col][col]
        mat[col] = [v * inv for v in mat[col]]
        for r in range(n):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return [mat[r][n] for r in range(n)]


def nf_arith(op, x, y):
    if x.field is not y.field:
        raise FieldMismatch(f"{x.field.label} vs {y.field.label}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def poly_eval(coeffs, point):
    """Horner evaluation of a low-to-high rational coefficient list."""
    acc = point.field.zero
    for c in reversed(coeffs):
        acc = acc * point + c
    return acc


# -----------------------------------------------------------------------------
# Catalog (irreducibility of each min poly is classical and not re-proved:
# t^2+1, t^2-2 have no rational roots; t^4+1 is the 8th cyclotomic polynomial;
# the degree-8 polynomial is the minimal polynomial of 2^(1/4)+i, whose
# conjugates are the 8 values +-2^(1/4)i^k +- i, all distinct.)
# -----------------------------------------------------------------------------

QQ = NumberField("Q", (0, 1), "t", "rationals")
QI = NumberField("Q(i)", (1, 0, 1), "i", "Gaussian field, constants of the residue tables")
QSQRT2 = NumberField("Q(sqrt2)", (-2, 0, 1), "sqrt2", "real quadratic subfield")
QZETA8 = NumberField("Q(zeta8)", (1, 0, 0, 0, 1), "a", "Q(i,sqrt2), houses a with a^2=i")
QM = NumberField("M", (1, 0, 28, 0, 2, 0, 4, 0, 1), "theta", "M=Q(i,2^(1/4)), theta=2^(1/4)+i")

CATALOG = {f.label: f for f in (QQ, QI, QSQRT2, QZETA8, QM)}

# i and 2^(1/4) in the theta power basis
_M_I = QM([0, Fraction(-127, 24), 0, Fraction(-5, 24), 0, Fraction(-19, 24), 0, Fraction(-5, 24)])
_M_R4 = QM([0, Fraction(151, 24), 0, Fraction(5, 24), 0, Fraction(19, 24), 0, Fraction(5, 24)])
assert _M_I * _M_I == -1 and _M_R4 ** 4 == 2 and _M_I + _M_R4 == QM.gen


def m_i():
    return _M_I


def m_r4():
    """The element 2^(1/4) of M."""
    return _M_R4


def zeta8_sqrt2():
    """sqrt2 = a - a^3 in Q(zeta8)."""
    a = QZETA8.gen
    return a - a ** 3


# images of source generators for the standard inclusions between catalog fields
_GEN_IMAGES = {
    ("Q(i)", "Q(zeta8)"): lambda: QZETA8.gen ** 2,
    ("Q(i)", "M"): lambda: _M_I,
    ("Q(sqrt2)", "Q(zeta8)"): zeta8_sqrt2,
    ("Q(sqrt2)", "M"): lambda: _M_R4 ** 2,
    # a = (1+i)/sqrt2 = (1+i) r4^2 / 2
    ("Q(zeta8)", "M"): lambda: (1 + _M_I) * _M_R4 ** 2 / 2,
}


def standard_gen_image(src, dst):
    if src is dst:
        return dst.gen
    try:
        return _GEN_IMAGES[(src.label, dst.label)]()
    except KeyError:
        raise FieldMismatch(f"no standard embedding {src.label} -> {dst.label}") from None


def nf_embed(x, dst, gen_image):
    """Image of ``x`` under the homomorphism sending the source generator to ``gen_image``."""
    src = x.field
    if src is QQ:
        return dst(x.to_fraction())
    if gen_image.field is not dst:
        raise FieldMismatch("gen_image must live in dst")
    if not poly_eval(src.min_poly, gen_image).is_zero():
        raise ValueError(f"{gen_image} does not satisfy the minimal polynomial of {src.label}")
    return poly_eval(x.coeffs, gen_image)


def embed(x, dst):
    """Push ``x`` into ``dst`` along the standard catalog inclusion."""
    if x.field is dst:
        return x
    if x.is_rational():
        return dst(x.to_fraction())
    return poly_eval(x.coeffs, standard_gen_image(x.field, dst))


def can_embed(src, dst):
    return src is dst or src is QQ or (src.label, dst.label) in _GEN_IMAGES


# -----------------------------------------------------------------------------
# Quadratic towers and exact square roots
# -----------------------------------------------------------------------------

def _set_tower(field, parent, delta, s):
    """Record field = parent(s) with s^2 = delta (delta in parent)."""
    assert s * s == embed(delta, field)
    d = parent.degree
    cols = []
    for j in range(d):
        b = embed(parent([0] * j + [1]), field)
        cols.append(b.coeffs)
    for j in range(d):
        b = embed(parent([0] * j + [1]), field) * s
        cols.append(b.coeffs)
    n = field.degree
    # inverse of the change-of-basis matrix, column by column
    inv_cols = []
    for k in range(n):
        mat = [[cols[j][i] for j in range(n)] + [Fraction(int(i == k))] for i in range(n)]
        inv_cols.append(_solve(mat, n))
    field._tower = (parent, delta, s, inv_cols)


_set_tower(QI, QQ, QQ(-1), QI.gen)
_set_tower(QSQRT2, QQ, QQ(2), QSQRT2.gen)
_set_tower(QZETA8, QI, QI(2), zeta8_sqrt2())
_set_tower(QM, QZETA8, zeta8_sqrt2(), _M_R4)


def _split(x):
    """Write x = a + b*s over the tower parent; returns (a, b)."""
    parent, _delta, _s, inv_cols = x.field._tower
    d = parent.degree
    n = x.field.degree
    cs = x.coeffs
    out = [sum((inv_cols[k][r] * cs[k] for k in range(n) if cs[k]), Fraction(0)) for r in range(n)]
    return parent(out[:d]), parent(out[d:])


def _rational_sqrt(q):
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _sqrt(x):
    field = x.field
    if x.is_zero():
        return field.zero
    if field is QQ:
        r = _rational_sqrt(x.to_fraction())
        return None if r is None else QQ(r)
    parent, delta, s, _ = field._tower
    a, b = _split(x)
    if b.is_zero():
        r = _sqrt(a)
        if r is not None:
            return embed(r, field)
        r = _sqrt(a / delta)
        if r is not None:
            return embed(r, field) * s
        return None
    sn = _sqrt(a * a - delta * b * b)
    if sn is None:
        return None
    for root_n in (sn, -sn):
        c = _sqrt((a + root_n) / 2)
        if c is not None and not c.is_zero():
            e = b / (2 * c)
            return embed(c, field) + embed(e, field) * s
    return None


def _root_key(y):
    return y.coeffs


def _canonical_root(roots):
    roots = [r for r in roots if r is not None]
    if not roots:
        return None
    positive = [r for r in roots if _leading_sign(r) > 0]
    pool = positive or roots
    return max(pool, key=_root_key)


def _leading_sign(y):
    for c in y.num:
        if c:
            return 1 if c > 0 else -1
    return 0


def nth_roots(x, n):
    """All n-th roots of x in its field, n in {1, 2, 4}."""
    if n == 1:
        return [x]
    if n % 2:
        raise ValueError("only n in {1,2,4} supported")
    r = _sqrt(x)
    if r is None:
        return []
    square_roots = [r] if r.is_zero() else [r, -r]
    if n == 2:
        return square_roots
    out = []
    for sr in square_roots:
        out.extend(nth_roots(sr, n // 2))
    uniq = []
    for y in out:
        if y not in uniq:
            uniq.append(y)
    return uniq


def nf_is_nth_power(x, n):
    """An n-th root of x in its field, or None.

    Among several roots the one with positive leading (lowest-index) nonzero
    coordinate and lexicographically largest coefficient vector is returned.
    """
    if x.is_zero():
        raise ValueError("x must be nonzero")
    if n not in (1, 2, 4):
        raise ValueError("n must be 2 or 4")
    return _canonical_root(nth_roots(x, n))


def is_nth_power(x, n):
    return nf_is_nth_power(x, n) is not None


def rational_factor(q):
    """Return ``(sign, {p: e})`` with q = sign * prod p^e."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if q > 0 else -1
    exps = dict(sympy.factorint(abs(q.numerator)))
    for p, e in sympy.factorint(q.denominator).items():
        exps[p] = exps.get(p, 0) - e
    exps.pop(1, None)
    return sign, {int(p): int(e) for p, e in sorted(exps.items()) if e}


# -----------------------------------------------------------------------------
# Human-readable rendering
# -----------------------------------------------------------------------------

def _display_basis(field):
    """(names, change-of-basis rows) used to print elements of ``field``."""
    if field._basis_names is not None:
        return field._basis_names
    if field is QQ:
        names, elts = ["1"], [QQ.one]
    elif field is QI:
        names, elts = ["1", "i"], [QI.one, QI.gen]
    elif field is QSQRT2:
        names, elts = ["1", "sqrt2"], [QSQRT2.one, QSQRT2.gen]
    elif field is QZETA8:
        i, r = QZETA8.gen ** 2, zeta8_sqrt2()
        names, elts = ["1", "i", "sqrt2", "i*sqrt2"], [QZETA8.one, i, r, i * r]
    else:
        i, r = _M_I, _M_R4
        names, elts = [], []
        for k in range(4):
            for j in range(2):
                nm = "*".join(p for p in (["i"] if j else []) + ([f"r4^{k}" if k > 1 else "r4"] if k else []))
                names.append(nm or "1")
                elts.append(i ** j * r ** k)
    n = field.degree
    cols = [e.coeffs for e in elts]
    inv_cols = []
    for k in range(n):
        mat = [[cols[j][row] for j in range(n)] + [Fraction(int(row == k))] for row in range(n)]
        inv_cols.append(_solve(mat, n))
    field._basis_names = (names, inv_cols)
    return field._basis_names


def display_coords(x):
    names, inv_cols = _display_basis(x.field)
    n = x.field.degree
    cs = x.coeffs
    vals = [sum((inv_cols[k][r] * cs[k] for k in range(n) if cs[k]), Fraction(0)) for r in range(n)]
    return list(zip(names, vals))


def format_element(x):
    """Fixed syntax: terms ``c*name`` joined by +/-, e.g. ``1+i``, ``-2*i*sqrt2``."""
    parts = []
    for name, c in display_coords(x):
        if c == 0:
            continue
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if name == "1":
            body = str(mag)
        elif mag == 1:
            body = name
        else:
            body = f"{mag}*{name}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out
