"""Named verification suites: each check records expected and actual values."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import census as census_mod
from . import divpoly as dp
from .arith import fmt_rational
from .errors import BadReduction
from .poly import QQ, UPoly
from .quotring import QuotRing, parse_field
from .resultants import r_m, verify_squarefree, verify_table1
from .screen import cw_verify, decide_T_rational, roots_of_unity_T
from .torsion import grouplaw_order_oracle, order_modp
from .tset import t_set_bounded

SUITES = ("fast", "paper")

# number fields used by the quadratic examples; generators are validated on load
FIELD_ZETA8_A = "t^4-2*t^2+9;i=1/6*t^3+1/6*t;s2=-1/6*t^3+5/6*t;sm2=1/2*t^2-1/2"
FIELD_ZETA8_B = "t^4+6*t^2+1;i=-1/2*t^3-5/2*t;s2=-1/2*t^2-3/2;sm2=1/2*t^3+7/2*t"
FIELD_SQRT2_QUARTIC = "t^4-4*t^2+2;s2=t^2-2;r=t^3-3*t"


@dataclass
class Check:
    id: str
    expected: object
    actual: object
    ok: bool
    seconds: float = 0.0

    def to_json(self):
        return {"id": self.id, "expected": self.expected, "actual": self.actual, "pass": self.ok,
                "seconds": round(self.seconds, 2)}


@dataclass
class SuiteReport:
    name: str
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def to_json(self):
        return {"suite": self.name, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def fixture_fields():
    """(ring, named elements) for the three quartic fixtures, with relations checked."""
    out = {}
    for key, desc in (("zeta8_a", FIELD_ZETA8_A), ("zeta8_b", FIELD_ZETA8_B)):
        K, e = parse_field(desc)
        assert e["i"] * e["i"] == -1 and e["s2"] * e["s2"] == 2 and e["sm2"] * e["sm2"] == -2
        out[key] = (K, e)
    K, e = parse_field(FIELD_SQRT2_QUARTIC)
    assert e["s2"] * e["s2"] == 2 and e["r"] * e["r"] == 2 - e["s2"]
    out["sqrt2_quartic"] = (K, e)
    return out


def _members_match(report, expected):
    """expected: list of (element, oa, ob); compares as sets of triples."""
    got = [(m[0], m[1], m[2]) for m in report.members]
    if len(got) != len(expected):
        return False
    return all(any(g[0] == x and g[1] == oa and g[2] == ob for g in got) for x, oa, ob in expected)


def _fmt_members(report):
    return [[str(m[0]), m[1], m[2]] for m in report.members]


def check_congruences(nmax_l, nmax_w):
    bad_l = [n for n in range(3, nmax_l + 1) if not dp.congruence_check_legendre(n)]
    bad_w = [n for n in range(3, nmax_w + 1) if not dp.congruence_check_weierstrass(n)]
    return not bad_l and not bad_w, {"legendre_failures": bad_l, "weierstrass_failures": bad_w}


def check_degrees(nmax_l, nmax_w):
    bad_l = [n for n in range(1, nmax_l + 1) if not dp.degree_check_legendre(n)]
    bad_w = [n for n in range(1, nmax_w + 1) if not dp.weierstrass_degree_check(n)]
    return not bad_l and not bad_w, {"legendre_failures": bad_l, "weierstrass_failures": bad_w}


def check_special(nmax):
    bad = [n for n in range(1, nmax + 1) if not dp.special_values_check(n)]
    return not bad, {"failures": bad}


def check_rational_examples():
    got = {}
    for a, b in ((2, 3), (2, 4), (3, -3)):
        dec = decide_T_rational(a, b)
        got[f"{a},{b}"] = [fmt_rational(x) for x in dec.members] if dec.status == "exact" else "inconclusive"
    want = {"2,3": [], "2,4": ["4"], "3,-3": ["-3", "9"]}
    K = QuotRing(UPoly((1, 1, 1), QQ, "t"))
    w = K.gen()
    rep = t_set_bounded(w, w * w, 8)
    omega_ok = _members_match(rep, [(w, 2, 4), (w * w, 4, 2)]) and rep.complete
    got["omega"] = _fmt_members(rep)
    return got == {**want, "omega": got["omega"]} and omega_ok, got


def check_triple():
    rep = t_set_bounded(mpq(3, 8), mpq(-9, 16), 12)
    want = [(mpq(-9, 16), 4, 2), (mpq(3, 128), 6, 6), (mpq(81, 256), 8, 4)]
    return _members_match(rep, want) and rep.complete, {"members": _fmt_members(rep), "complete": rep.complete}


def check_five_element(fields):
    out, ok = {}, True
    for key in ("zeta8_a", "zeta8_b"):
        K, e = fields[key]
        i, s2, sm2 = e["i"], e["s2"], e["sm2"]
        rep = t_set_bounded(i, -i, 12)
        want = [(K.coerce(-1), 4, 4), (3 + 2 * s2, 6, 6), (3 - 2 * s2, 6, 6),
                ((1 + 2 * sm2) / 3, 10, 10), ((1 - 2 * sm2) / 3, 10, 10)]
        good = _members_match(rep, want) and rep.complete
        degree_ok = rep.gcd_degree == len([m for m in rep.members if m[0] != i and m[0] != -i]) + \
            max(rep.residual.degree, 0)
        ok = ok and good and degree_ok
        out[key] = {"members": _fmt_members(rep), "complete": rep.complete, "gcd_degree": rep.gcd_degree}
    return ok, out


def check_quadratic_row(fields):
    K, e = fields["sqrt2_quartic"]
    s2, r = e["s2"], e["r"]
    rep = t_set_bounded(1 + s2, -1 + s2, 12)
    c = (4 - 2 * s2) * r
    want = [(K.coerce(-1), 4, 4), (7 - 4 * s2 + c, 5, 10), (7 - 4 * s2 - c, 5, 10)]
    return _members_match(rep, want), {"members": _fmt_members(rep), "complete": rep.complete}


def check_roots_of_unity():
    out, ok = {}, True
    for k in (2, 3, 4, 5, 6, 8, 12):
        rep = roots_of_unity_T(k, verify=True)
        ok = ok and rep["verified"]
        out[str(k)] = {"members": rep["members"], "orders": [str(o) for o in rep["orders"]]}
    ok = ok and len(out["12"]["members"]) == 3
    return ok, out


def check_resultants(ms, max_m):
    out, ok = {}, True
    for m in ms:
        rec = r_m(m)
        sq = verify_squarefree(m)
        ok = ok and sq
        out[str(m)] = {"bidegree": list(rec.bidegree), "removed_power": rec.removed, "squarefree": sq}
    rep = verify_table1(max_m=max_m)
    out["table1_passed"] = len(rep.passed)
    out["table1_failed"] = [f["poly"] for f in rep.failed]
    return ok and rep.ok and len(rep.passed) == 35, out


def check_census(d_max):
    res = census_mod.census(d_max)
    want = {k: v for k, v in census_mod.REFERENCE_TABLE.items() if min(k) <= d_max}
    got = {k: res.counts.get(k, 0) for k in want}
    mismatch = {f"{k[0]},{k[1]}": [want[k], got[k]] for k in want if want[k] != got[k]}
    ok = not mismatch and not res.violations
    return ok, {"mismatches": mismatch, "flagged": [list(k) for k in res.flagged], "violations": res.violations}


def check_weierstrass():
    rows, dropped = cw_verify(1, 2, 3)
    pairs = [(int(r["A"]), int(r["B"])) for r in rows]
    twos = [sum(1 for o in r["orders"] if o.tag == "order_two") for r in rows]
    ok = pairs == [(-7, 6), (-13, 12), (-19, 30)] and twos == [2, 2, 2] and not dropped
    return ok, {"pairs": [list(p) for p in pairs], "two_torsion_counts": twos}


def check_grouplaw(seed, count=500):
    rng = random.Random(seed)
    primes = [p for p in range(3, 98) if all(p % q for q in range(2, p))]
    done, bad = 0, []
    while done < count:
        p = rng.choice(primes)
        lam, alpha = rng.randrange(p), rng.randrange(p)
        try:
            ours = order_modp(lam, alpha, p)
        except BadReduction:
            continue
        if ours != grouplaw_order_oracle(p, lam, alpha):
            bad.append([p, lam, alpha])
        done += 1
    return not bad, {"seed": seed, "triples": count, "disagreements": bad}


def run_suite(name: str, seed: int = 20240601) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    fast = name == "fast"
    fields = fixture_fields()
    plan = [
        ("congruences", lambda: check_congruences(32 if fast else 64, 32)),
        ("degrees", lambda: check_degrees(32 if fast else 64, 32)),
        ("special-values", lambda: check_special(40)),
        ("rational-examples", check_rational_examples),
        ("triple", check_triple),
        ("five-element", lambda: check_five_element(fields)),
        ("quadratic-row", lambda: check_quadratic_row(fields)),
        ("roots-of-unity", check_roots_of_unity),
        ("resultants", lambda: check_resultants((3, 4) if fast else (3, 4, 5, 6), 4 if fast else 6)),
        ("census", lambda: check_census(4 if fast else 24)),
        ("weierstrass", check_weierstrass),
        ("grouplaw-oracle", lambda: check_grouplaw(seed)),
    ]
    rep = SuiteReport(name)
    for cid, fn in plan:
        (ok, actual), secs = _timed(fn)
        rep.checks.append(Check(cid, "pass", actual, bool(ok), secs))
    return rep


__all__ = ["run_suite", "SuiteReport", "Check", "fixture_fields", "SUITES"]
