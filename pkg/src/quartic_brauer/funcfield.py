"""Polynomials and rational functions in one variable over a catalog number field.

The variable is called ``y`` in printed output; it stands for whichever
parameter coordinate a line carries.
"""

from __future__ import annotations

from fractions import Fraction

from .exactalg import NFElement, NumberField, embed, format_element, nf_is_nth_power


class Poly:
    """Dense polynomial, coefficients low-to-high, no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs=()):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, field, c):
        return cls(field, [c])

    @classmethod
    def var(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def linear(cls, field, root):
        """The monic polynomial y - root."""
        return cls(field, [-field(root), 1])

    # -- queries --------------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self):
        return self.scale(self.lc().inverse())

    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, NFElement)):
            return self == Poly(self.field, [other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("y" if k == 1 else f"y^{k}")
            cs = format_element(c)
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"({cs})*{mono}")
        return "+".join(terms).replace("+-", "-")

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise ValueError("field mismatch")
            return other
        if isinstance(other, (int, Fraction, NFElement)):
            return Poly(self.field, [other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        z = self.field.zero
        return Poly(self.field, [(a[k] if k < len(a) else z) + (b[k] if k < len(b) else z) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def scale(self, c):
        return Poly(self.field, [c * a for a in self.coeffs])

    def __pow__(self, k):
        result = Poly(self.field, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = other.lc().inverse()
        quo = [self.field.zero] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            if c.is_zero():
                continue
            quo[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return Poly(self.field, quo), Poly(self.field, rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def derivative(self):
        return Poly(self.field, [c * k for k, c in enumerate(self.coeffs)][1:])

    def embed(self, dst):
        return Poly(dst, [embed(c, dst) for c in self.coeffs])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a if a.is_zero() else a.monic()


def squarefree_decomposition(f: Poly):
    """Yun's algorithm: returns [a1, a2, ...] monic squarefree, pairwise coprime,
    with f = lc(f) * prod a_k^k."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return []
    parts = []
    fp = f.derivative()
    a0 = poly_gcd(f, fp)
    b = f.exact_div(a0)
    c = fp.exact_div(a0)
    d = c - b.derivative()
    while b.degree > 0:
        a = poly_gcd(b, d)
        parts.append(a)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
    while parts and parts[-1].degree == 0:
        parts.pop()
    return parts


class Place:
    """A closed point of P^1: a monic irreducible polynomial or infinity."""

    __slots__ = ("poly",)

    def __init__(self, poly: Poly | None = None):
        if poly is not None:
            if poly.degree < 1 or not poly.is_monic():
                raise ValueError("finite place needs a nonconstant monic polynomial")
            if poly_gcd(poly, poly.derivative()).degree > 0:
                raise ValueError("place polynomial must be squarefree")
        self.poly = poly

    @classmethod
    def infinity(cls):
        return cls(None)

    @classmethod
    def at(cls, field, root):
        return cls(Poly.linear(field, root))

    @property
    def is_infinity(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else self.poly.degree

    def root(self):
        if self.poly is None or self.poly.degree != 1:
            raise ValueError("place has no rational root")
        return -self.poly.coeffs[0]

    def __eq__(self, other):
        return isinstance(other, Place) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return "Place(inf)" if self.poly is None else f"Place({self.poly})"


class RatFunc:
    """num/den with gcd 1 and monic den."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, _reduced=False):
        if den is None:
            den = Poly(num.field, [1])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly(num.field, [1])
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
                lc = den.lc()
                if lc != 1:
                    inv = lc.inverse()
                    num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def const(cls, field, c):
        return cls(Poly(field, [c]))

    @classmethod
    def var(cls, field):
        return cls(Poly.var(field))

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeffs[0] if self.num.coeffs else self.field.zero

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, NFElement)):
            return self == RatFunc.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction, NFElement)):
            return RatFunc.const(self.field, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

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
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def embed(self, dst):
        return RatFunc(self.num.embed(dst), self.den.embed(dst), _reduced=True)

    def lc_ratio(self):
        """lc(num)/lc(den); equals lc(num) since den is monic."""
        return self.num.lc() / self.den.lc()


def _poly_val(f: Poly, p: Poly) -> int:
    v = 0
    while True:
        q, r = f.divmod(p)
        if not r.is_zero():
            return v
        f = q
        v += 1


def rf_val(f: RatFunc, p: Place) -> int:
    if f.is_zero():
        raise ValueError("valuation of zero")
    if p.is_infinity:
        return f.den.degree - f.num.degree
    return _poly_val(f.num, p.poly) - _poly_val(f.den, p.poly)


def rf_unit_part(f: RatFunc, p: Place) -> NFElement:
    """Value at p of f * u^(-val), with u = y - a at finite p and 1/y at infinity."""
    if f.is_zero():
        raise ValueError("unit part of zero")
    if p.is_infinity:
        return f.lc_ratio()
    if p.poly.degree != 1:
        raise ValueError("place has residue degree > 1; extend the field first")
    num, den = f.num, f.den
    while True:
        q, r = num.divmod(p.poly)
        if not r.is_zero():
            break
        num = q
    while True:
        q, r = den.divmod(p.poly)
        if not r.is_zero():
            break
        den = q
    a = p.root()
    return num(a) / den(a)


def nth_power_class(f: RatFunc, n: int):
    """Canonical data for the class of f in K(y)*/K(y)*^n.

    Returns ``(c, R)`` with c = lc(f) and R monic, every irreducible factor of
    multiplicity < n, such that f = c * R * g^n for some g.
    """
    if f.is_zero():
        raise ValueError("class of zero")
    field = f.field
    rep = Poly(field, [1])
    for k, part in enumerate(squarefree_decomposition(f.num), start=1):
        if k % n:
            rep = rep * part ** (k % n)
    for k, part in enumerate(squarefree_decomposition(f.den), start=1):
        if (-k) % n:
            rep = rep * part ** ((-k) % n)
    return f.lc_ratio(), rep


def rf_is_nth_power_up_to_const(f: RatFunc, n: int):
    """(True, c) when f = c * g^n over the algebraic closure, else (False, None)."""
    c, rep = nth_power_class(f, n)
    if rep.degree > 0:
        return False, None
    return True, c


def constant_nth_root(c: NFElement, n: int):
    return nf_is_nth_power(c, n)
