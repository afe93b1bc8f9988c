"""Symbol algebras on S and their tame residues along the 24 vertical lines.

A class (f, g)_n has residue at a line l equal to the class of

    (-1)^(v(f) v(g)) * f^v(g) * g^(-v(f))

restricted to l, in k(l)^* / k(l)^*n.  Entries of symbols are products of a
constant, the atoms F, G, t, t+-1, t+-i, and two free constants a, b; each
atom's valuation and leading restriction comes from :mod:`geometry`.

Residues of n = 2 and n = 4 symbols are combined in k(l)^*/k(l)^*4, a
square class q being sent to q^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from .exactalg import (
    QI, QM, QZETA8, NFElement, NumberField, can_embed, embed, format_element,
    nf_is_nth_power, zeta8_sqrt2,
)
from .funcfield import Poly, RatFunc, nth_power_class, squarefree_decomposition
from .geometry import TRACKED, get_line, line_catalog, vertical_val_res

GEOMETRIC = "geometric"
ATOMS = ("F", "G", "t", "t+1", "t-1", "t+i", "t-i")
PARAMS = ("a", "b")


# -----------------------------------------------------------------------------
# Tracked elements and symbols
# -----------------------------------------------------------------------------

class TrackedElt:
    """``constant * prod atom^e * a^ea * b^eb`` with the constant in Q(i)."""

    __slots__ = ("constant", "exponents", "param_exps")

    def __init__(self, constant=1, exponents=None, param_exps=None):
        self.constant = QI(constant)
        self.exponents = {k: v for k, v in (exponents or {}).items() if v}
        self.param_exps = {k: v for k, v in (param_exps or {}).items() if v}
        for k in self.exponents:
            if k not in ATOMS:
                raise ValueError(f"unknown atom {k!r}")
        for k in self.param_exps:
            if k not in PARAMS:
                raise ValueError(f"unknown parameter {k!r}")

    @classmethod
    def atom(cls, name):
        if name in PARAMS:
            return cls(1, {}, {name: 1})
        return cls(1, {name: 1})

    def __mul__(self, other):
        if not isinstance(other, TrackedElt):
            other = TrackedElt(other)
        ex = dict(self.exponents)
        for k, v in other.exponents.items():
            ex[k] = ex.get(k, 0) + v
        pe = dict(self.param_exps)
        for k, v in other.param_exps.items():
            pe[k] = pe.get(k, 0) + v
        return TrackedElt(self.constant * other.constant, ex, pe)

    __rmul__ = __mul__

    def __pow__(self, k):
        return TrackedElt(self.constant ** k, {a: e * k for a, e in self.exponents.items()},
                          {a: e * k for a, e in self.param_exps.items()})

    def __eq__(self, other):
        return (isinstance(other, TrackedElt) and self.constant == other.constant
                and self.exponents == other.exponents and self.param_exps == other.param_exps)

    def __hash__(self):
        return hash((self.constant, tuple(sorted(self.exponents.items())),
                     tuple(sorted(self.param_exps.items()))))

    def __str__(self):
        parts = []
        if self.constant != 1 or not (self.exponents or self.param_exps):
            parts.append(f"({format_element(self.constant)})" if "+" in format_element(self.constant)
                         or "-" in format_element(self.constant)[1:] else format_element(self.constant))
        for name in ATOMS + PARAMS:
            e = self.exponents.get(name) or self.param_exps.get(name)
            if not e:
                continue
            base = f"({name})" if len(name) > 1 else name
            parts.append(base if e == 1 else f"{base}^{e}")
        return "*".join(parts)

    def __repr__(self):
        return f"TrackedElt({self})"

    def valuation(self, line):
        return sum(e * _atom_local(name, line)[0] for name, e in self.exponents.items())


def _T(name):
    return TrackedElt.atom(name)


@dataclass(frozen=True)
class Symbol:
    n: int
    left: TrackedElt
    right: TrackedElt

    def __post_init__(self):
        if self.n not in (2, 4):
            raise ValueError("n must be 2 or 4")

    def __str__(self):
        return f"({self.left},{self.right})_{self.n}"


@dataclass(frozen=True)
class BrauerElement:
    terms: tuple
    name: str = ""

    def __add__(self, other):
        return BrauerElement(self.terms + other.terms)

    def named(self, name):
        return BrauerElement(self.terms, name)

    def __str__(self):
        return " + ".join(str(s) for s in self.terms)


def symbol(n, left, right):
    return BrauerElement((Symbol(n, left, right),))


def catalog_elements() -> dict:
    F, G, t = _T("F"), _T("G"), _T("t")
    a, b = _T("a"), _T("b")
    A = (symbol(2, F * G, _T("t+1")) + symbol(2, F, _T("t+i")))
    Zc = symbol(4, t, F ** 2 * G)
    D = Zc + symbol(2, F * G, _T("t+1"))
    E = Zc + symbol(2, F, _T("t+i"))
    extra = symbol(2, TrackedElt(1 + QI.gen), _T("t+i") * G)
    ab_part = symbol(2, a, F) + symbol(2, b, G)
    out = {
        "A": A, "D": D, "E": E, "Z": Zc,
        "B": A + extra, "E1": E + extra,
        "x1": A + ab_part, "x2": D + ab_part, "x3": E + ab_part,
    }
    return {k: v.named(k) for k, v in out.items()}


# -----------------------------------------------------------------------------
# Residue classes
# -----------------------------------------------------------------------------

def _atom_local(name, line):
    return vertical_val_res(TRACKED[name], get_line(line))


def _mode_field(mode, line):
    if mode == GEOMETRIC:
        return line.base_field
    if not isinstance(mode, NumberField):
        raise ValueError(f"mode must be {GEOMETRIC!r} or a NumberField")
    if not can_embed(line.base_field, mode):
        raise ValueError(f"{line.name} is not defined over {mode.label}")
    return mode


@dataclass(frozen=True)
class ResidueClass:
    """Class ``constant * func * a^exp_a * b^exp_b`` in k(l)^*/k(l)^*n.

    ``func`` is the canonical monic representative (every irreducible factor
    of multiplicity < n) of the non-constant part.
    """

    field: Union[NumberField, str]
    n: int
    constant: NFElement
    func: Poly
    exp_a: int
    exp_b: int

    @classmethod
    def build(cls, field, n, constant, func: RatFunc, exp_a=0, exp_b=0):
        c, rep = nth_power_class(func, n)
        return cls(field, n, constant * c, rep, exp_a % n, exp_b % n)

    @property
    def geometric(self):
        return self.field == GEOMETRIC

    def is_trivial(self):
        if self.func.degree > 0:
            return False
        if self.geometric:
            return True
        return self.exp_a == 0 and self.exp_b == 0 and nf_is_nth_power(self.constant, self.n) is not None

    def ratio(self, other):
        if self.n != other.n or self.field != other.field:
            raise ValueError("incompatible residue classes")
        func = RatFunc(self.func, other.func)
        return ResidueClass.build(self.field, self.n, self.constant / other.constant, func,
                                  self.exp_a - other.exp_a, self.exp_b - other.exp_b)

    def equivalent(self, other):
        return self.ratio(other).is_trivial()

    def to_mu2(self):
        """Preimage under k*/k*2 -> k*/k*4, q -> q^2 (identity when n = 2)."""
        if self.n == 2:
            return self
        if self.exp_a % 2 or self.exp_b % 2:
            raise ValueError("class is not a square class")
        func = Poly(self.func.field, [1])
        for k, part in enumerate(squarefree_decomposition(self.func) if self.func.degree > 0 else [], 1):
            if part.degree == 0:
                continue
            if k % 2:
                raise ValueError("class is not a square class")
            func = func * part ** (k // 2)
        if self.geometric:
            c = self.constant
        else:
            c = nf_is_nth_power(self.constant, 2)
            if c is None:
                raise ValueError("constant part is not a square")
        return ResidueClass.build(self.field, 2, c, RatFunc(func), self.exp_a // 2, self.exp_b // 2)

    def const_class(self):
        """(constant, exp_a, exp_b); requires the function part to be trivial."""
        if self.func.degree > 0:
            raise ValueError(f"residue has nonconstant part {self.func}")
        return self.constant, self.exp_a, self.exp_b

    def __str__(self):
        parts = []
        if not self.geometric or self.func.degree == 0:
            cs = format_element(self.constant) if not self.geometric else "1"
            parts.append(f"({cs})" if any(ch in cs[1:] for ch in "+-") else cs)
        if self.func.degree > 0:
            parts.append(f"({self.func})")
        if self.exp_a:
            parts.append("a" if self.exp_a == 1 else f"a^{self.exp_a}")
        if self.exp_b:
            parts.append("b" if self.exp_b == 1 else f"b^{self.exp_b}")
        if parts and parts[0] == "1" and len(parts) > 1:
            parts = parts[1:]
        return "*".join(parts)


def _raw_residue(sym: Symbol, line, field):
    """(constant, RatFunc, exp_a, exp_b) of the tame residue, unreduced."""
    vf = sym.left.valuation(line)
    vg = sym.right.valuation(line)
    const = field(-1 if (vf * vg) % 2 else 1)
    const = const * embed(sym.left.constant, field) ** vg * embed(sym.right.constant, field) ** (-vf)
    func = RatFunc.const(field, 1)
    for elt, power in ((sym.left, vg), (sym.right, -vf)):
        if power == 0:
            continue
        for name, e in elt.exponents.items():
            sbar = _atom_local(name, line)[1]
            if sbar.field is not field:
                sbar = sbar.embed(field)
            func = func * sbar ** (e * power)
    ea = sym.left.param_exps.get("a", 0) * vg - sym.right.param_exps.get("a", 0) * vf
    eb = sym.left.param_exps.get("b", 0) * vg - sym.right.param_exps.get("b", 0) * vf
    return const, func, ea, eb


def tame_residue(sym: Symbol, line, mode=GEOMETRIC) -> ResidueClass:
    line = get_line(line)
    field = _mode_field(mode, line)
    const, func, ea, eb = _raw_residue(sym, line, field)
    return ResidueClass.build(GEOMETRIC if mode == GEOMETRIC else field, sym.n, const, func, ea, eb)


def brauer_residue(e: BrauerElement, line, mode=GEOMETRIC) -> ResidueClass:
    line = get_line(line)
    field = _mode_field(mode, line)
    n = max(s.n for s in e.terms)
    const = field.one
    func = RatFunc.const(field, 1)
    ea = eb = 0
    for sym in e.terms:
        c, f, a, b = _raw_residue(sym, line, field)
        k = n // sym.n
        const = const * c ** k
        func = func * f ** k
        ea += a * k
        eb += b * k
    return ResidueClass.build(GEOMETRIC if mode == GEOMETRIC else field, n, const, func, ea, eb)


def purity_scan(e: BrauerElement, mode=GEOMETRIC) -> list:
    """Lines where the residue of e is nontrivial (vertical divisors only).

    Horizontal divisors are not scanned: the classes considered are already
    unramified on the generic fibre.
    """
    return [line.id for line in line_catalog() if not brauer_residue(e, line, mode).is_trivial()]


# -----------------------------------------------------------------------------
# Residue tables
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    line_id: int
    fiber: str
    value: ResidueClass

    @property
    def value_string(self):
        return str(self.value)


def residue_table(variant: str, field: NumberField = QZETA8) -> list:
    """Residues of x1/x2/x3 along all 24 lines as square classes over ``field``."""
    elems = catalog_elements()
    if variant not in ("x1", "x2", "x3"):
        raise ValueError("variant must be x1, x2 or x3")
    if not (can_embed(QZETA8, field)):
        raise ValueError("field must contain i and sqrt2")
    e = elems[variant]
    rows = []
    for line in line_catalog():
        rc = brauer_residue(e, line, field).to_mu2()
        rows.append(TableRow(line.id, line.fiber_label(), rc))
    return rows


def square_equivalent(x: NFElement, y: NFElement) -> bool:
    return nf_is_nth_power(x / y, 2) is not None


# -----------------------------------------------------------------------------
# Descent to k(t): the Faddeev constraints
# -----------------------------------------------------------------------------

def square_class_generators(field):
    """Named elements used to display square classes (first match wins)."""
    a = embed(QZETA8.gen, field)
    r2 = embed(zeta8_sqrt2(), field)
    i = embed(QI.gen, field)
    return [("sqrt2", r2), ("(1+i)", 1 + i), ("(1+sqrt2)", 1 + r2), ("(1-a)", 1 - a)]


def square_class_label(x: NFElement) -> str:
    gens = square_class_generators(x.field)
    if nf_is_nth_power(x, 2) is not None:
        return "1"
    for r in range(1, len(gens) + 1):
        for combo in combinations(gens, r):
            prod = x.field.one
            for _, g in combo:
                prod = prod * g
            if square_equivalent(x, prod):
                return "*".join(name for name, _ in combo)
    return format_element(x)


@dataclass
class FaddeevResult:
    variant: str
    field: NumberField
    forced_a: Optional[NFElement]
    forced_b: Optional[NFElement]
    fiber_chars: dict
    obstruction_class: NFElement
    consistent: bool
    descends: bool
    constraints: list = dc_field(default_factory=list)

    def summary(self):
        def lab(v):
            return "free" if v is None else square_class_label(v)
        return {
            "variant": self.variant,
            "field": self.field.label,
            "forced_a": lab(self.forced_a),
            "forced_b": lab(self.forced_b),
            "fiber_chars": {k: square_class_label(v) for k, v in self.fiber_chars.items()},
            "obstruction_class": square_class_label(self.obstruction_class),
            "consistent": self.consistent,
            "descends": self.descends,
        }


_VARIANTS = {"A": "x1", "D": "x2", "E": "x3"}


def faddeev_solve(variant: str, field: NumberField = QZETA8) -> FaddeevResult:
    """Decide whether some choice of a, b makes x_variant come from Br k(t).

    Residues on the four components of a fibre must agree (they pull back
    from one residue on P^1); this gives linear conditions on the square
    classes of a and b.  The surviving fibre characters must then multiply
    to a square.
    """
    if variant not in _VARIANTS:
        raise ValueError("variant must be A, D or E")
    rows = residue_table(_VARIANTS[variant], field)
    data = {r.line_id: r.value.const_class() for r in rows}
    fibers = {}
    for line in line_catalog():
        fibers.setdefault(line.fiber_label(), []).append(line.id)

    # equations a^alpha b^beta ~ r over F2 with multiplicative right-hand side
    eqs = []
    for label, ids in fibers.items():
        c0, a0, b0 = data[ids[0]]
        for lid in ids[1:]:
            c1, a1, b1 = data[lid]
            eqs.append([(a0 + a1) % 2, (b0 + b1) % 2, c0 * c1, f"{label}: l{ids[0]}~l{lid}"])

    pivots = {}
    for col in (0, 1):
        piv = next((e for e in eqs if e[col] and all(e is not p for p in pivots.values())), None)
        if piv is None:
            continue
        for e in eqs:
            if e is not piv and e[col]:
                e[0] = (e[0] + piv[0]) % 2
                e[1] = (e[1] + piv[1]) % 2
                e[2] = e[2] * piv[2]
        pivots[col] = piv
    bad = [e for e in eqs if not e[0] and not e[1] and nf_is_nth_power(e[2], 2) is None]
    consistent = not bad

    forced = [None, None]
    if 1 in pivots and not pivots[1][0]:
        forced[1] = pivots[1][2]
    if 0 in pivots:
        piv = pivots[0]
        if not piv[1]:
            forced[0] = piv[2]
        elif forced[1] is not None:
            forced[0] = piv[2] * forced[1]

    one = field.one
    chars = {}
    free_exp = [0, 0]
    for label, ids in fibers.items():
        c, ea, eb = data[ids[0]]
        for k, (e, val) in enumerate(((ea, forced[0]), (eb, forced[1]))):
            if e % 2:
                if val is None:
                    free_exp[k] += 1
                else:
                    c = c * val
        chars[label] = c
    product = one
    for c in chars.values():
        product = product * c
    product_square = nf_is_nth_power(product, 2) is not None
    can_adjust = any(x % 2 for x in free_exp)
    if consistent:
        obstruction = product
        descends = product_square or can_adjust
    else:
        obstruction = bad[0][2]
        descends = False
    nontrivial = {k: v for k, v in chars.items() if nf_is_nth_power(v, 2) is None}
    return FaddeevResult(variant, field, forced[0], forced[1], nontrivial, obstruction, consistent, descends,
                         [(e[3], e[0], e[1], e[2]) for e in eqs])


def table_mismatches(variant: str, field: NumberField = QZETA8) -> list:
    """Line ids where the computed table differs from the golden table up to squares."""
    from .reference import expected_table

    out = []
    for row, (c, ea, eb) in zip(residue_table(variant, field), expected_table(variant, field)):
        v = row.value
        if v.exp_a != ea % 2 or v.exp_b != eb % 2 or not square_equivalent(v.constant, c):
            out.append(row.line_id)
    return out
