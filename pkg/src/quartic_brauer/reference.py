"""Golden values for the residue tables of x1, x2, x3.

Each entry is ``(constant, exp_a, exp_b)`` with the constant written in the
names ``i`` and ``sqrt2``.  Entries are compared with computed residues up to
squares, never literally.
"""

from __future__ import annotations

from .exactalg import QZETA8, NumberField, embed, zeta8_sqrt2

_X1 = ["i a", "1", "1", "i a", "(1+i) a b", "1", "1", "(1+i) a b",
       "-(1+i) a b", "i", "-i", "(1+i) a b",
       "(1+i) b", "1", "1", "(1+i) b",
       "sqrt2 b", "-sqrt2*(1-i)", "sqrt2*(1-i)", "-sqrt2 b",
       "a b", "b", "b", "a b"]
_X2 = ["a", "1", "1", "a", "a b", "1", "1", "a b",
       "a b", "i", "i", "a b",
       "sqrt2 b", "1", "1", "sqrt2 b",
       "2*i*sqrt2 b", "1", "1", "2*i*sqrt2 b",
       "a b", "b", "b", "a b"]
_X3 = ["i a", "1", "1", "i a", "(1+i) a b", "1", "1", "(1+i) a b",
       "-(1+i) a b", "1", "-1", "(1+i) a b",
       "sqrt2*(1+i) b", "1", "1", "sqrt2*(1+i) b",
       "2*i b", "-sqrt2*(1-i)", "sqrt2*(1-i)", "-2*i b",
       "a b", "b", "b", "a b"]

RAW_TABLES = {"x1": _X1, "x2": _X2, "x3": _X3}


def _parse(entry: str, field: NumberField):
    tokens = entry.split()
    ea = eb = 0
    const_tokens = []
    for tok in tokens:
        if tok == "a":
            ea += 1
        elif tok == "b":
            eb += 1
        else:
            const_tokens.append(tok)
    names = {"i": embed(QZETA8.gen ** 2, field), "sqrt2": embed(zeta8_sqrt2(), field)}
    expr = "*".join(const_tokens) or "1"
    value = eval(expr, {"__builtins__": {}}, names)
    return field(value) if not hasattr(value, "field") else value, ea, eb


def expected_table(variant: str, field: NumberField = QZETA8):
    """24 tuples (constant, exp_a, exp_b) for lines l1..l24."""
    return [_parse(e, field) for e in RAW_TABLES[variant]]


def expected_string(variant: str, line_id: int) -> str:
    return RAW_TABLES[variant][line_id - 1].replace(" ", "*").replace("**", "*")
