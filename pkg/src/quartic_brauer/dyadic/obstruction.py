"""Local invariants of the quaternion class B at the two dyadic points.

B = [A1, A2] + [A3, A4] + [1+i, A5].  At the rational point Q = (2, -1, 2)
all entries lie in Q2(i), and restriction along M_u / Q2(i) (degree 4) kills
every element of order 2.  At the point P = (1/r4, l/r4, 1+sqrt2) the value
1/2 is obtained by a chain of reductions; every step is checked by machine
and recorded in a derivation log.  Steps use four rules:

R1  a symbol whose entries lie in a subfield of even index is killed;
R2  an entry is replaced by a square-equivalent one;
R3  corestriction (a norm down a quadratic step, or ``cores_quad``);
R4  the closed formula over Q2.

Restricting then evaluating a general symbol over the e = 8 field is not
attempted: points other than these two raise NotImplementedError unless all
entries already lie in Q2(i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..exactalg import QM
from ..geometry import SurfacePoint, eval_funcs, verify_identity, x_, y_, z_
from .field import (MU, Q2I, Q2SQRT2, Q2ZETA8, DyadicElt, default_precision, dy_embed, dy_galois,
                    dy_nth_root, dy_norm, from_nf, in_subfield, square_equivalent)
from .hilbert import cores_quad, hilbert_bruteforce, hilbert_q2, inv_mod1, inv_restrict

HALF = Fraction(1, 2)


class VerificationError(AssertionError):
    """A reduction step failed its machine check."""


@dataclass
class DyadicPoint:
    label: str
    x: DyadicElt
    y: DyadicElt
    z: DyadicElt
    data: dict = field(default_factory=dict)      # subfield coordinates used by the replay

    def on_surface(self):
        return (self.x ** 4 - self.y ** 4 - self.z ** 4 + 1).is_zero()

    def surface_point(self):
        return SurfacePoint(self.x, self.y, self.z)


class DerivationLog:
    RULES = ("R1", "R2", "R3", "R4", "identity")

    def __init__(self):
        self.records = []

    def add(self, rule, inputs, output, verified):
        if rule not in self.RULES:
            raise ValueError(rule)
        rec = {"step": len(self.records) + 1, "rule": rule, "inputs": inputs,
               "output": output, "verified": bool(verified)}
        self.records.append(rec)
        if not verified:
            raise VerificationError(f"step {rec['step']} ({rule}) failed: {inputs} -> {output}")
        return rec

    def lines(self):
        return [f"{r['step']:>2} {r['rule']:<8} {r['inputs']} => {r['output']}"
                f"  [{'ok' if r['verified'] else 'FAILED'}]" for r in self.records]


# -----------------------------------------------------------------------------
# Points
# -----------------------------------------------------------------------------

def lemma_l(N=None):
    """The fourth root l of d = 1 - 8 sqrt2 (3 + 2 sqrt2) in Q2(sqrt2).

    l is the root with l^2 = 1 + 4 sqrt2 + 16 sqrt2 + 32 mod 2^5 sqrt2.
    """
    N = N or default_precision()
    r2 = Q2SQRT2.named("sqrt2")
    d = (1 - 8 * r2 * (3 + 2 * r2)).with_prec(N)
    target = 1 + 4 * r2 + 16 * r2 + 32
    l = dy_nth_root(d, 4, condition=lambda c: (c * c - target).val_lb() >= 11)
    if l is None:
        raise VerificationError("no fourth root of d with the prescribed square")
    if not ((l ** 4 - d).is_zero() and (l * l - target).val_lb() >= 11):
        raise VerificationError("fourth root check failed")
    return l, d


def build_point_P(N=None) -> DyadicPoint:
    """P = (1/r4, l/r4, 1 + sqrt2) over M_u."""
    l, d = lemma_l(N)
    r2 = Q2SQRT2.named("sqrt2")
    r4 = MU.named("r4")
    x = 1 / r4
    y = dy_embed(l, MU) / r4
    z = MU(1 + r2)
    pt = DyadicPoint("P", x, y, z, {"l": l, "d": d, "x2": 1 / r2, "y2": l * l / r2,
                                    "xy": l / r2, "z": 1 + r2})
    if not pt.on_surface():
        raise VerificationError("P is not on the surface")
    return pt


def build_point_Q() -> DyadicPoint:
    """The rational point Q = (2, -1, 2), seen over M (globally) and over M_u."""
    pt = DyadicPoint("Q", MU(2), MU(-1), MU(2), {"global": SurfacePoint(QM(2), QM(-1), QM(2))})
    if not (pt.on_surface() and pt.data["global"].on_surface()):
        raise VerificationError("Q is not on the surface")
    return pt


def _values(pt: DyadicPoint):
    coerce = lambda c: from_nf(c, MU)
    return eval_funcs(pt.surface_point(), coerce, names=("A1", "A2", "A3", "A4", "A5", "B"))


# -----------------------------------------------------------------------------
# Evaluation
# -----------------------------------------------------------------------------

def _all_in_q2i(vals, log: DerivationLog):
    entries = [vals["A1"], vals["A2"], vals["A3"], vals["A4"], MU.named("i") + 1, vals["A5"]]
    ok = all(in_subfield(v, Q2I) for v in entries)
    if not ok:
        return None
    for v in (HALF, Fraction(0)):
        ok = ok and inv_restrict(v, 4) == 0
    log.add("R1", "[A1,A2]+[A3,A4]+[1+i,A5] with all entries in Q2(i); [M_u:Q2(i)] = 4",
            "0", ok)
    return Fraction(0)


def _chain_P(pt: DyadicPoint, vals, log: DerivationLog, crosschecks: dict):
    r2 = Q2SQRT2.named("sqrt2")
    i8 = Q2ZETA8.named("i")
    l = pt.data["l"]
    x2, y2, z = pt.data["x2"], pt.data["y2"], pt.data["z"]
    killed_by_2 = all(inv_restrict(v, 2) == 0 for v in (0, HALF))

    # R1: [A3, A4] and [1+i, A5] come from Q2(zeta8), index 2 in M_u
    ok = all(in_subfield(vals[k], Q2ZETA8) for k in ("A3", "A4", "A5")) and killed_by_2
    log.add("R1", "[A3,A4]+[1+i,A5]; A3, A4, A5 in Q2(zeta8), [M_u:Q2(zeta8)] = 2",
            "[A1,A2]", ok)

    # R1: A1 = (x-y) * c with c = (1+i)(z-1)B in Q2(zeta8); A2 in Q2(zeta8)
    xmy = pt.x - pt.y
    c = vals["A1"] / xmy
    ok = in_subfield(c, Q2ZETA8) and in_subfield(vals["A2"], Q2ZETA8) and killed_by_2
    ok = ok and (c - (1 + MU.named("i")) * (pt.z - 1) * vals["B"]).is_zero()
    log.add("R1", "[A1,A2] = [x-y,A2] + [(1+i)(z-1)B, A2]; second symbol from Q2(zeta8)",
            "[x0-y0, A2]", ok)

    # R3: corestriction M_u -> Q2(zeta8): [x-y, A2] -> [N(x-y), A2]
    norm = dy_norm(xmy, Q2ZETA8)
    r2z = Q2ZETA8.named("sqrt2")
    lz = dy_embed(l, Q2ZETA8)
    norm_down = -(1 - lz) ** 2 / r2z
    a2_sub = (dy_embed(z * z + x2 - y2 - 1, Q2ZETA8)
              * (dy_embed(z * z - 1, Q2ZETA8) - i8 * dy_embed(x2 - y2, Q2ZETA8)))
    ok = (norm - dy_embed(norm_down, MU)).is_zero() and (vals["A2"] - dy_embed(a2_sub, MU)).is_zero()
    log.add("R3", "Cor M_u -> Q2(zeta8): N(x0-y0) = (x0-y0)*sigma(x0-y0)",
            "[-(1-l)^2/sqrt2, A2] over Q2(zeta8)", ok)

    # R2: -(1-l)^2/sqrt2 ~ sqrt2, since -1 = i^2 is a square
    ok = square_equivalent(norm_down, r2z)
    log.add("R2", "-(1-l)^2/sqrt2 ~ sqrt2 in Q2(zeta8)", "[sqrt2, A2]", ok)

    # R1: A2 = f1 * f2 with f1 = z^2+x^2-y^2-1 in Q2(sqrt2)
    f1 = z * z + x2 - y2 - 1
    f2 = dy_embed(z * z - 1, Q2ZETA8) - i8 * dy_embed(x2 - y2, Q2ZETA8)
    f1_mu = (z_ ** 2 + x_ ** 2 - y_ ** 2 - 1).subs((pt.x, pt.y, pt.z), MU(1), lambda q: from_nf(q, MU))
    ok = (dy_embed(f1, MU) - f1_mu).is_zero() and (dy_embed(f1, Q2ZETA8) * f2 - a2_sub).is_zero()
    ok = ok and killed_by_2
    log.add("R1", "[sqrt2, z0^2+x0^2-y0^2-1] comes from Q2(sqrt2), index 2",
            "[sqrt2, -1+z0^2-i(x0^2-y0^2)]", ok)
    crosschecks["bruteforce [sqrt2, -1+z0^2-i(x0^2-y0^2)] over Q2(zeta8)"] = \
        hilbert_bruteforce(r2z, f2.with_prec(40), Q2ZETA8)

    # R3: corestriction Q2(zeta8) -> Q2(sqrt2)
    nf2 = (z * z - 1) ** 2 + (x2 - y2) ** 2
    ok = (dy_norm(f2, Q2SQRT2) - dy_embed(nf2, Q2ZETA8)).is_zero() and in_subfield(f2 * dy_galois(f2, "rho"), Q2SQRT2)
    log.add("R3", "Cor Q2(zeta8) -> Q2(sqrt2): N(-1+z0^2-i(x0^2-y0^2))",
            "[sqrt2, (z0^2-1)^2+(x0^2-y0^2)^2] over Q2(sqrt2)", ok)

    # identity: (z^2-1)^2 + (x^2-y^2)^2 = 2(z^2-1)(z^2-m^2)/(m^2+1) on y = m x
    l2 = l * l
    rhs = 2 * (z * z - 1) * (z * z - l2) / (l2 + 1)
    ok = verify_identity("trul_quadric") and (nf2 - rhs).is_zero()
    log.add("identity", "(z^2-1)^2+(x^2-y^2)^2 = 2(z^2-1)(z^2-l^2)/(l^2+1)",
            "[sqrt2, 2(z0^2-1)(z0^2-l^2)/(l^2+1)]", ok)

    # R2: drop the square 2 and invert l^2+1 up to squares
    prod3 = (z * z - 1) * (z * z - l2) * (l2 + 1)
    ok = square_equivalent(rhs, prod3)
    log.add("R2", "2 = sqrt2^2 and 1/(l^2+1) ~ l^2+1",
            "[sqrt2, (z0^2-1)(z0^2-l^2)(l^2+1)]", ok)
    crosschecks["bruteforce [sqrt2, (z0^2-1)(z0^2-l^2)(l^2+1)] over Q2(sqrt2)"] = \
        hilbert_bruteforce(r2, prod3, Q2SQRT2)

    # R2: the three square-class facts
    facts = [(z * z - 1, 1 + r2), (l2 + 1, 1 + 2 * r2), (z * z - l2, 1 - r2)]
    ok = all(square_equivalent(a, b) for a, b in facts)
    ok = ok and (1 + r2) * (1 + 2 * r2) * (1 - r2) == -1 - 2 * r2
    log.add("R2", "z0^2-1 ~ 1+sqrt2, l^2+1 ~ 1+2sqrt2, z0^2-l^2 ~ 1-sqrt2",
            "[sqrt2, -1-2sqrt2]", ok)
    crosschecks["bruteforce [sqrt2, -1-2sqrt2] over Q2(sqrt2)"] = \
        hilbert_bruteforce(r2, -1 - 2 * r2, Q2SQRT2)

    # R3: cores_quad with d = 2, a = -1, b = -2
    syms = cores_quad(2, -1, -2)
    ok = syms == [(Fraction(-1), Fraction(-2)), (Fraction(-2), Fraction(-7))]
    log.add("R3", "Cor Q2(sqrt2) -> Q2 of [sqrt2, -1-2sqrt2]", "[-1,-2]+[-2,-7] over Q2", ok)

    # R4: closed formula over Q2
    parts = [hilbert_q2(a, b) for a, b in syms]
    total = inv_mod1(sum(parts))
    log.add("R4", "hilbert_q2(-1,-2) + hilbert_q2(-2,-7)",
            f"{parts[0]} + {parts[1]} = {total}", True)
    return total


def eval_B_at(pt: DyadicPoint):
    """(inv_u(B(pt)), derivation log, cross-checks)."""
    log = DerivationLog()
    crosschecks = {}
    vals = _values(pt)
    if pt.label == "Q":
        glob = eval_funcs(pt.data["global"], names=("A1", "A2", "A3", "A4", "A5"))
        if not all((vals[k] - from_nf(glob[k], MU)).is_zero() for k in glob):
            raise VerificationError("A_k(Q) over M and over M_u disagree")
    inv = _all_in_q2i(vals, log)
    if inv is not None:
        return inv, log, crosschecks
    if pt.label == "P" and "l" in pt.data:
        return _chain_P(pt, vals, log, crosschecks), log, crosschecks
    raise NotImplementedError("symbols over M_u outside Q2(i) need the general Hilbert symbol")


@dataclass
class ObstructionReport:
    inv_P: Fraction
    inv_Q: Fraction
    total: Fraction
    log_P: DerivationLog
    log_Q: DerivationLog
    crosschecks: dict
    stable: bool
    precision: int
    note: str = ("At every other place v the global point makes the local invariants "
                 "cancel, so the adelic sum equals inv_u(B(P)) - inv_u(B(Q)); this "
                 "cancellation is quoted, not recomputed.")

    def summary(self):
        return (f"inv_u(B(P)) = {self.inv_P}; inv_u(B(Q)) = {self.inv_Q}; "
                f"sum = {self.total}; stable at N={self.precision} and {2 * self.precision}: {self.stable}")


def obstruction_sum(N=None) -> ObstructionReport:
    """inv_u(B(P)) - inv_u(B(Q)), checked at precisions N and 2N."""
    N = N or default_precision()
    results = []
    for prec in (N, 2 * N):
        inv_P, log_P, checks = eval_B_at(build_point_P(prec))
        inv_Q, log_Q, _ = eval_B_at(build_point_Q())
        results.append((inv_P, inv_Q, log_P, log_Q, checks))
    (p1, q1, log_P, log_Q, checks), (p2, q2, *_rest) = results
    stable = (p1, q1) == (p2, q2)
    for name, v in checks.items():
        if v != HALF:
            raise VerificationError(f"cross-check {name} gave {v}")
    return ObstructionReport(p1, q1, inv_mod1(p1 - q1), log_P, log_Q, checks, stable, N)
