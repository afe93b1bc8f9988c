"""Fourth-power classes of rationals and the screeners built on them.

Q*/Q*^4 is {+-1} x (sum over primes of Z/4): the class of -1 has order 2
because (-1)^2 = 1^4.  A coefficient quadruple (a0:a1:a2:a3) lies in W when
2 is *not* in the subgroup generated by a1/a0, a2/a0, a3/a0 and -4; for the
surface a0 X0^4 - a1 X1^4 = a2 X2^4 - a3 X3^4 this forces the 2-primary
transcendental Brauer group to vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable

from .exactalg import rational_factor

MAX_GENERATORS = 8

ST_HOLDS = "ST_holds_by_ccprop"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class FourthClassVec:
    """Class in Q*/Q*^4: sign exponent mod 2 and prime exponents mod 4."""

    sign_exp: int
    prime_exps: tuple      # sorted (p, e) pairs with 0 < e < 4

    @classmethod
    def of(cls, q) -> "FourthClassVec":
        sign, exps = rational_factor(Fraction(q))
        return cls(0 if sign > 0 else 1, tuple((p, e % 4) for p, e in sorted(exps.items()) if e % 4))

    def __mul__(self, other):
        exps = dict(self.prime_exps)
        for p, e in other.prime_exps:
            exps[p] = (exps.get(p, 0) + e) % 4
        return FourthClassVec((self.sign_exp + other.sign_exp) % 2,
                              tuple(sorted((p, e) for p, e in exps.items() if e)))

    def __pow__(self, k):
        return FourthClassVec((self.sign_exp * k) % 2,
                              tuple((p, (e * k) % 4) for p, e in self.prime_exps if (e * k) % 4))

    def is_trivial(self):
        return self.sign_exp == 0 and not self.prime_exps

    def __str__(self):
        parts = ["-1"] if self.sign_exp else []
        parts += [f"{p}^{e}" if e > 1 else str(p) for p, e in self.prime_exps]
        return "*".join(parts) or "1"


ONE = FourthClassVec(0, ())


def _as_vec(x):
    return x if isinstance(x, FourthClassVec) else FourthClassVec.of(x)


def mod4_witness(target, gens):
    """Exponents (k_1..k_g) in {0..3} with prod gens^k = target mod Q*^4, or None.

    Exhaustive over (Z/4)^g.
    """
    gens = [_as_vec(g) for g in gens]
    if len(gens) > MAX_GENERATORS:
        raise ValueError(f"at most {MAX_GENERATORS} generators")
    target = _as_vec(target)
    powers = [[ONE, g, g * g, g * g * g] for g in gens]
    for combo in product(range(4), repeat=len(gens)):
        acc = ONE
        for pw, k in zip(powers, combo):
            if k:
                acc = acc * pw[k]
        if acc == target:
            return combo
    return None


def mod4_member(target, gens) -> bool:
    """Is target in the subgroup generated by gens?"""
    return mod4_witness(target, gens) is not None


def _check_nonzero(coeffs):
    qs = [Fraction(a) for a in coeffs]
    if any(q == 0 for q in qs):
        raise ValueError("coefficients must be nonzero")
    return qs


def condition_Z(a0, a1, a2, a3) -> bool:
    """True when (a0:a1:a2:a3) is in W."""
    qs = _check_nonzero((a0, a1, a2, a3))
    ratios = [q / qs[0] for q in qs[1:]]
    in_subgroup = mod4_member(2, ratios + [-4])
    # equivalent form: +-2 in the group generated by all ratios a_i/a_j
    all_ratios = [qs[i] / qs[j] for i in range(4) for j in range(i + 1, 4)]
    alt = mod4_member(2, all_ratios[:3]) or mod4_member(-2, all_ratios[:3])
    if in_subgroup != alt:
        raise AssertionError(f"equivalent forms of condition Z disagree on {qs}")
    return not in_subgroup


def _check_pair_arg(a):
    if not isinstance(a, int) or a % 2 == 0 or a in (1, -1):
        raise ValueError(f"{a} must be an odd integer other than +-1")
    _, exps = rational_factor(a)
    if any(e >= 4 for e in exps.values()):
        raise ValueError(f"{a} must be fourth-power free")
    return exps


def _match(ea: dict, eb: dict):
    """Does (a, b) with these prime exponents have one of the two forms?"""
    if not eb or any(e != 2 for e in eb.values()):
        return None
    qs = []
    for p, e in ea.items():
        if p in eb:
            if e not in (1, 3):
                return None
        elif e == 2:
            qs.append(p)
        else:
            return None
    if any(p not in ea for p in eb):
        return None
    return "form_a" if qs else "form_b"


def classify_pair(a: int, b: int) -> str:
    """'form_a', 'form_b' or 'none' for the pair (1:1:2a:2b).

    form_b: a = +-prod p^(1 or 3), b = +-prod p^2.  form_a additionally lets
    a carry squares of primes q not dividing b.  Symmetric in (a, b).
    """
    ea, eb = _check_pair_arg(a), _check_pair_arg(b)
    kind = _match(ea, eb) or _match(eb, ea) or "none"
    if (kind != "none") == condition_Z(1, 1, 2 * a, 2 * b):
        raise AssertionError(f"classification of ({a},{b}) disagrees with condition Z")
    return kind


# -----------------------------------------------------------------------------
# Family screening
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    coeffs: tuple
    in_W: bool
    verdict: str
    reason: str

    def row(self):
        return {"input": " ".join(str(c) for c in self.coeffs), "in_W": self.in_W,
                "verdict": self.verdict, "reason": self.reason}


def _squarefree(n):
    return all(e == 1 for e in rational_factor(n)[1].values())


def sd_family(d: int, a: int, b: int) -> tuple:
    """Coefficients of X0^4 + 4 X1^4 = d a^2 X2^4 + d b^2 X3^4."""
    if d == 0 or d % 4 == 0 or any(e >= 4 for e in rational_factor(d)[1].values()):
        raise ValueError("d must be nonzero, fourth-power free and not divisible by 4")
    if a <= 0 or b <= 0 or a < b or gcd(a, b) != 1 or not (_squarefree(a) and _squarefree(b)):
        raise ValueError("a, b must be squarefree, positive, coprime with a >= b")
    return (1, -4, d * a * a, -d * b * b)


def _same_two_parity(coeffs):
    vals = [rational_factor(c)[1].get(2, 0) % 2 for c in coeffs]
    return len(set(vals)) == 1


def screen_family(kind: str, *params) -> Verdict:
    """Screen one member of a family: 'sd' (d, a, b), 'general' or 'all_odd' (a0..a3).

    The criterion is sufficient only: failure of condition Z yields
    'inconclusive', never a claim that the property fails.
    """
    if kind == "sd":
        if len(params) != 3:
            raise ValueError("sd family takes d, a, b")
        coeffs = sd_family(*params)
    elif kind in ("general", "all_odd"):
        if len(params) != 4:
            raise ValueError("need four coefficients")
        coeffs = tuple(Fraction(p) for p in params)
        coeffs = tuple(int(c) if c.denominator == 1 else c for c in coeffs)
        if kind == "all_odd" and not all(isinstance(c, int) and c % 2 for c in coeffs):
            raise ValueError("all_odd needs odd integers")
    else:
        raise ValueError(f"unknown family {kind!r}")
    _check_nonzero(coeffs)
    in_w = condition_Z(*coeffs)
    if kind == "all_odd" and not in_w:
        raise AssertionError(f"odd quadruple {coeffs} outside W")
    if in_w:
        reason = "2 not in <a_i/a_0, -4> mod fourth powers"
        if all(isinstance(c, int) for c in coeffs) and _same_two_parity(coeffs):
            reason += "; 2-adic valuations share parity"
        return Verdict(coeffs, True, ST_HOLDS, reason)
    return Verdict(coeffs, False, INCONCLUSIVE, "2 in <a_i/a_0, -4>; criterion does not apply")


def screen_lines(lines: Iterable[str]):
    """Batch screening: one whitespace-separated quadruple per line."""
    out = []
    for raw in lines:
        raw = raw.strip()
        if not raw or raw.startswith("#"):
            continue
        parts = raw.split()
        if len(parts) != 4:
            raise ValueError(f"expected four rationals, got {raw!r}")
        out.append(screen_family("general", *parts))
    return out


def sd_sweep(d_range=range(-30, 31), b_values=(1, 2, 3, 5), a_max=15):
    """All admissible (d, a, b) in the sweep, with their verdicts."""
    rows = []
    for d in d_range:
        if d == 0 or d % 4 == 0 or any(e >= 4 for e in rational_factor(d)[1].values()):
            continue
        for b in b_values:
            for a in range(b, a_max + 1):
                if gcd(a, b) != 1 or not (_squarefree(a) and _squarefree(b)):
                    continue
                rows.append(((d, a, b), screen_family("sd", d, a, b)))
    return rows
