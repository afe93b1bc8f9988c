"""Acceptance checks shared by the ``selftest`` subcommand and the test suite.

Each criterion runs a group of checks against golden values and a runtime
limit.  A check may be flagged ``known_conflict``: the golden statement was
found not to hold, the discrepancy is documented, and the check is reported
as failing rather than adjusted.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .exactalg import QI, QM, QZETA8, embed, zeta8_sqrt2
from .funcfield import RatFunc
from .geometry import F, G, vertical_divisor, vertical_val_res
from .kummer import INCONCLUSIVE, _check_pair_arg, classify_pair, condition_Z, screen_family, sd_sweep
from .residues import (GEOMETRIC, catalog_elements, faddeev_solve, purity_scan, residue_table,
                       square_equivalent, table_mismatches)

HALF = Fraction(1, 2)

_i = QI.gen
_y = RatFunc.var(QI)

APPENDIX_G = {1: (2, _i / (2 * _y ** 2)), 2: (2, -_i / (2 * _y ** 2)),
              3: (0, 2 * _i * _y ** 2), 4: (0, -2 * _i * _y ** 2),
              21: (-3, RatFunc.const(QI, -1)), 22: (-3, RatFunc.const(QI, -1)),
              23: (-3, RatFunc.const(QI, -1)), 24: (-3, RatFunc.const(QI, -1))}
APPENDIX_F = {1: (1, (_i - 1) / _y), 2: (2, (_i - 1) * _y / 2),
              3: (0, -2 * (1 - _i) * _y), 4: (1, (1 - _i) * _y ** 3)}

DIVISOR_G = {1: 2, 2: 2, 5: 1, 8: 1, 9: 1, 12: 1, 13: 1, 16: 1, 17: 1, 20: 1,
             21: -3, 22: -3, 23: -3, 24: -3}
DIVISOR_F = {1: 1, 2: 2, 4: 1, 5: 1, 8: 1, 9: 1, 12: 1, 21: -3, 22: -2, 23: -2, 24: -1}


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    known_conflict: bool = False


@dataclass
class CriterionResult:
    number: int
    title: str
    limit: float
    seconds: float = 0.0
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.ok for c in self.checks) and self.seconds <= self.limit

    @property
    def only_known_conflicts(self):
        bad = [c for c in self.checks if not c.ok]
        return bool(bad) and all(c.known_conflict for c in bad) and self.seconds <= self.limit

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        text = (f"criterion {self.number} ({self.title}): {status} "
                f"[{self.seconds:.1f}s, limit {self.limit:.0f}s]")
        for c in self.checks:
            if not c.ok:
                tag = "known conflict" if c.known_conflict else "failed"
                text += f"; {tag}: {c.name}" + (f" ({c.detail})" if c.detail else "")
        return text


def _run(number, title, limit, body):
    res = CriterionResult(number, title, limit)
    start = time.perf_counter()
    try:
        body(res.checks)
    except Exception as exc:          # a crash is a failed check, not a crashed report
        res.checks.append(Check("raised", False, f"{type(exc).__name__}: {exc}"))
    res.seconds = time.perf_counter() - start
    return res


# -----------------------------------------------------------------------------
# Criteria
# -----------------------------------------------------------------------------

def _c1(checks):
    for name, h, table in (("G", G, APPENDIX_G), ("F", F, APPENDIX_F)):
        bad = [l for l, pair in table.items() if vertical_val_res(h, l) != pair]
        checks.append(Check(f"appendix pairs for {name}", not bad, f"lines {bad}" if bad else ""))


def _c2(checks):
    for name, h, expected in (("G", G, DIVISOR_G), ("F", F, DIVISOR_F)):
        got = {k: v for k, v in vertical_divisor(h).items() if v}
        checks.append(Check(f"div({name}) on the 24 lines", got == expected, "" if got == expected else str(got)))


def _c3(checks):
    el = catalog_elements()
    for name, e in (("A", el["A"]), ("D", el["D"]), ("A+D", el["A"] + el["D"])):
        bad = purity_scan(e, GEOMETRIC)
        checks.append(Check(f"geometric purity of {name}", not bad, f"ramified at {bad}" if bad else ""))


def _c4(checks):
    for variant in ("x1", "x2", "x3"):
        bad = table_mismatches(variant, QZETA8)
        checks.append(Check(f"table {variant} (24 entries)", not bad, f"lines {bad}" if bad else ""))
    row = next(r for r in residue_table("x2", QZETA8) if r.line_id == 13)
    v = row.value
    ok = v.exp_a == 0 and v.exp_b == 1 and square_equivalent(v.constant, embed(zeta8_sqrt2(), QZETA8))
    checks.append(Check("worked entry at l13 for x2 is sqrt2*b", ok, str(v)))


def _c5(checks):
    r2 = zeta8_sqrt2()
    res = faddeev_solve("A", QZETA8)
    checks.append(Check("A over Q(zeta8): a ~ 1, b ~ 1+i",
                        square_equivalent(res.forced_a, QZETA8(1))
                        and square_equivalent(res.forced_b, embed(1 + _i, QZETA8))))
    for variant in ("A", "D", "E"):
        res = res if variant == "A" else faddeev_solve(variant, QZETA8)
        ok = res.descends is False and square_equivalent(res.obstruction_class, r2)
        checks.append(Check(f"{variant} over Q(zeta8): descends=false, obstruction ~ sqrt2", ok))
    el = catalog_elements()
    for name in ("B", "D", "E1"):
        bad = purity_scan(el[name], QM)
        checks.append(Check(f"arithmetic purity of {name} over M", not bad, f"ramified at {bad}" if bad else ""))
    for variant in ("A", "D", "E"):
        checks.append(Check(f"{variant} over M: descends=true", faddeev_solve(variant, QM).descends))


def _random_admissible(rng):
    while True:
        n = rng.choice([-1, 1]) * rng.randrange(3, 400, 2)
        try:
            _check_pair_arg(n)
            return n
        except ValueError:
            continue


def _c6(checks):
    rng = random.Random(6)
    kinds = {"form_a": 0, "form_b": 0, "none": 0}
    agree = True
    for _ in range(200):
        a, b = _random_admissible(rng), _random_admissible(rng)
        try:
            kind = classify_pair(a, b)
        except AssertionError:
            agree = False
            break
        kinds[kind] += 1
        agree = agree and ((kind != "none") == (not condition_Z(1, 1, 2 * a, 2 * b)))
    checks.append(Check("classify_pair agrees with condition Z on 200 pairs", agree, str(kinds)))

    odd_ok = True
    for _ in range(200):
        q = [rng.choice([-1, 1]) * rng.randrange(1, 999, 2) for _ in range(4)]
        odd_ok = odd_ok and screen_family("all_odd", *q).in_W
    checks.append(Check("200 all-odd quadruples lie in W", odd_ok))

    rows = sd_sweep()
    inconclusive = {p for p, v in rows if v.verdict == INCONCLUSIVE}
    predicted = {p for p, _ in rows if abs(p[0]) == 2 and p[2] in (1, 2)}
    extra = sorted(inconclusive - predicted)
    missing = sorted(predicted - inconclusive)
    # documented discrepancy: d = +-18 with 3 | ab also fails condition Z
    known = bool(extra) and not missing and all(
        abs(d) == 18 and (a % 3 == 0 or b % 3 == 0) for d, a, b in extra)
    detail = f"{len(extra)} extra, e.g. {extra[:3]}; {len(missing)} missing"
    if known:
        detail += "; extra cases all have d = +-18 and 3 | ab"
    checks.append(Check("sd sweep: inconclusive exactly for d = +-2, b in {1,2}",
                        not extra and not missing, detail, known_conflict=known))


def _c7(checks):
    from .dyadic import Q2SQRT2, hilbert_bruteforce, hilbert_q2, lemma_l, square_equivalent as dsq
    r2 = Q2SQRT2.named("sqrt2")
    l, d = lemma_l()
    checks.append(Check("l^4 = d", (l ** 4 - d).is_zero()))
    checks.append(Check("l^2 = 1+20sqrt2+32 mod pi^11", (l * l - (1 + 20 * r2 + 32)).val_lb() >= 11))
    z0 = 1 + r2
    facts = [(z0 ** 2 - 1, 1 + r2), (l * l + 1, 1 + 2 * r2), (z0 ** 2 - l * l, 1 - r2)]
    checks.append(Check("three square-class facts", all(dsq(a, b) for a, b in facts)))
    rng = random.Random(7)
    bad = 0
    for _ in range(200):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 300), rng.randint(1, 40))
        b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 300), rng.randint(1, 40))
        bad += hilbert_bruteforce(a, b) != hilbert_q2(a, b)
    checks.append(Check("hilbert_bruteforce = hilbert_q2 on 200 pairs", bad == 0, f"{bad} mismatches"))


def _c8(checks):
    from .dyadic import obstruction_sum
    rep = obstruction_sum()
    checks.append(Check("inv_u(B(Q)) = 0", rep.inv_Q == 0))
    checks.append(Check("inv_u(B(P)) = 1/2", rep.inv_P == HALF))
    checks.append(Check("obstruction sum = 1/2", rep.total == HALF))
    logs_ok = all(r["verified"] for log in (rep.log_P, rep.log_Q) for r in log.records)
    checks.append(Check("every log step verified", logs_ok))
    checks.append(Check("stable under doubling precision", rep.stable))


CRITERIA = {
    1: ("appendix values", 5, _c1),
    2: ("divisors of F and G", 5, _c2),
    3: ("geometric purity", 10, _c3),
    4: ("residue tables", 30, _c4),
    5: ("Faddeev verdicts", 60, _c5),
    6: ("Kummer screeners", 30, _c6),
    7: ("dyadic core", 60, _c7),
    8: ("obstruction", 120, _c8),
}


def run_criterion(n: int) -> CriterionResult:
    title, limit, body = CRITERIA[n]
    return _run(n, title, limit, body)


def run_property_suite(test_dir=None) -> CriterionResult:
    """Criterion 9: run the module test suites (properties included) in a subprocess."""
    test_dir = Path(test_dir or Path.cwd() / "tests")

    def body(checks):
        files = sorted(str(p) for p in test_dir.glob("test_*.py")
                       if p.name not in ("test_acceptance.py",))
        proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *files],
                              capture_output=True, text=True)
        tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
        checks.append(Check("module and property suites", proc.returncode == 0, tail))

    return _run(9, "property suites", 600, body)


def run_all(numbers=tuple(CRITERIA)):
    return [run_criterion(n) for n in numbers]
