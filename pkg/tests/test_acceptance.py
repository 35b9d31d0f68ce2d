"""End-to-end acceptance checks, one per criterion; each prints a PASS/FAIL line."""

import random
import time

import pytest
from gmpy2 import mpq

from legtors import divpoly as dp
from legtors.arith import hbar, log_height, rho, v2
from legtors.census import REFERENCE_TABLE, census
from legtors.divpoly import Infinity, lattes
from legtors.poly import parse_upoly
from legtors.quotring import QuotRing
from legtors.resultants import r_m, verify_squarefree, verify_table1
from legtors.screen import cw_verify, decide_T_rational, roots_of_unity_T
from legtors.torsion import BadReduction, grouplaw_order_oracle, order_bounded, order_modp
from legtors.tset import t_set_bounded

SEED = 20240601


@pytest.fixture
def report(capsys):
    def _report(number, ok, title, detail=""):
        with capsys.disabled():
            tail = f" ({detail})" if detail else ""
            print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}{tail}")
        assert ok, f"criterion {number} failed: {detail}"
    return _report


def _members(rep):
    return {m[0]: (m[1], m[2]) for m in rep.members}


def _same_members(rep, expected):
    got = _members(rep)
    return len(got) == len(expected) and all(got.get(lam) == orders for lam, orders in expected.items())


def test_criterion_01_congruences(report):
    t = time.perf_counter()
    bad_l = [n for n in range(3, 65) if not dp.congruence_check_legendre(n)]
    bad_w = [n for n in range(3, 33) if not dp.congruence_check_weierstrass(n)]
    secs = time.perf_counter() - t
    report(1, not bad_l and not bad_w and secs <= 120, "2-adic congruences, Legendre n<=64, Weierstrass n<=32",
           f"{secs:.1f}s, failures {bad_l + bad_w}")


def test_criterion_02_degrees(report):
    bad_l = [n for n in range(1, 65) if not dp.degree_check_legendre(n)]
    bad_w = [n for n in range(1, 33)
             if not (dp.weierstrass_degree_check(n) and dp.weierstrass_homogeneity_check(n))]
    report(2, not bad_l and not bad_w, "degrees of psi_n (n<=64) and deg_A, homogeneity of Psi_n (n<=32)",
           f"failures {bad_l + bad_w}")


def test_criterion_03_special_values(report):
    bad = [n for n in range(1, 41) if not dp.special_values_check(n)]
    signs_ok = all(dp.a_coeff(2 * m) == (-1) ** (m - 1) * m for m in range(1, 21))
    report(3, not bad and signs_ok, "special values at x = 0, 1, lambda for n<=40", f"failures {bad}")


def test_criterion_04_rational_examples(report):
    got = {(a, b): decide_T_rational(a, b) for a, b in ((2, 3), (2, 4), (3, -3))}
    ok = all(d.status == "exact" for d in got.values())
    ok = ok and got[(2, 3)].members == [] and got[(2, 4)].members == [4] and got[(3, -3)].members == [-3, 9]
    K = QuotRing(parse_upoly("t^2+t+1"))
    w = K.gen()
    rep = t_set_bounded(w, w * w, 8)
    # at lambda = omega the omega-point has order 2 and the omega^2-point order 4, and symmetrically
    ok = ok and rep.complete and _same_members(rep, {w: (2, 4), w * w: (4, 2)})
    report(4, ok, "T(2,3), T(2,4), T(3,-3) and T_8(omega, omega^2)")


def test_criterion_05_triple(report):
    t = time.perf_counter()
    rep = t_set_bounded(mpq(3, 8), mpq(-9, 16), 12)
    secs = time.perf_counter() - t
    want = {mpq(-9, 16): (4, 2), mpq(3, 128): (6, 6), mpq(81, 256): (8, 4)}
    report(5, _same_members(rep, want) and rep.complete and secs <= 120, "T_12(3/8, -9/16)", f"{secs:.1f}s")


def test_criterion_06_five_element_set(report, fields):
    details, ok = [], True
    for key in ("zeta8_a", "zeta8_b"):
        K, e = fields[key]
        i, s2, sm2 = e["i"], e["s2"], e["sm2"]
        rep = t_set_bounded(i, -i, 12)
        want = {K.coerce(-1): (4, 4), 3 + 2 * s2: (6, 6), 3 - 2 * s2: (6, 6),
                (1 + 2 * sm2) / 3: (10, 10), (1 - 2 * sm2) / 3: (10, 10)}
        accounted = len([m for m in rep.members if m[0] not in (i, -i)]) + len(rep.discarded) \
            + max(rep.residual.degree, 0)
        this = _same_members(rep, want) and rep.complete and accounted == rep.gcd_degree
        details.append(f"{key}: {len(rep.members)} members, gcd degree {rep.gcd_degree}")
        ok = ok and this
    report(6, ok, "T_12(i, -i) over both quartic fixtures", "; ".join(details))


def test_criterion_07_quadratic_row(report, fields):
    K, e = fields["sqrt2_quartic"]
    s2, r = e["s2"], e["r"]
    rep = t_set_bounded(1 + s2, -1 + s2, 12)
    c = (4 - 2 * s2) * r
    want = {K.coerce(-1): (4, 4), 7 - 4 * s2 + c: (5, 10), 7 - 4 * s2 - c: (5, 10)}
    report(7, _same_members(rep, want), "T_12(1+sqrt2, -1+sqrt2)")


def test_criterion_08_roots_of_unity(report):
    ok, sizes = True, {}
    for k in (2, 3, 4, 5, 6, 8, 12):
        rep = roots_of_unity_T(k, verify=True)
        ok = ok and rep["verified"]
        sizes[k] = len(rep["members"])
    ok = ok and sizes[12] == 3
    report(8, ok, "roots-of-unity trichotomy verified in Q[t]/Phi_k", f"sizes {sizes}")


def test_criterion_09_resultants(report):
    t = time.perf_counter()
    degs = {}
    ok = True
    for m in (3, 4, 5, 6):
        rec = r_m(m)  # raises if (a-b)^d(m) does not divide exactly
        degs[m] = rec.bidegree
        ok = ok and rec.removed == dp.d(m) and verify_squarefree(m)
    rep = verify_table1()
    secs = time.perf_counter() - t
    ok = ok and rep.ok and len(rep.passed) == 35 and secs <= 600
    report(9, ok, "R_3..R_6 divisibility and squarefreeness; 35 corpus polynomials",
           f"bidegrees {degs}, {len(rep.passed)}/35, {secs:.1f}s")


def test_criterion_10_census(report):
    t = time.perf_counter()
    small = census(4)
    t_small = time.perf_counter() - t
    res = census(24)
    secs = time.perf_counter() - t
    wrong = {k: (v, res.counts.get(k, 0)) for k, v in REFERENCE_TABLE.items() if res.counts.get(k, 0) != v}
    small_ok = all(small.counts.get(k, 0) == v for k, v in REFERENCE_TABLE.items() if max(k) <= 4)
    ok = not wrong and small_ok and t_small <= 10 and secs <= 900 and not res.violations
    report(10, ok, "orbit census up to bidegree 24", f"{len(REFERENCE_TABLE)} entries, {secs:.1f}s, "
                                                     f"mismatches {wrong}")


def test_criterion_11_weierstrass(report):
    rows, dropped = cw_verify(1, 2, 3)
    pairs = [(int(r["A"]), int(r["B"])) for r in rows]
    ok = pairs == [(-7, 6), (-13, 12), (-19, 30)] and not dropped
    for row, (i, j) in zip(rows, ((0, 1), (0, 2), (1, 2))):
        xs = (mpq(1), mpq(2), mpq(3))
        cubic = [x ** 3 + row["A"] * x + row["B"] for x in xs]
        twos = [k for k, o in enumerate(row["orders"]) if o.tag == "order_two"]
        ok = ok and twos == [i, j] and cubic[i] == 0 and cubic[j] == 0 and cubic[3 - i - j] != 0
    report(11, ok, "Weierstrass candidates for (1, 2, 3)", f"pairs {pairs}")


def _oracle_agreement(rng):
    primes = [p for p in range(3, 98) if all(p % q for q in range(2, p))]
    done = 0
    while done < 500:
        p = rng.choice(primes)
        lam, alpha = rng.randrange(p), rng.randrange(p)
        try:
            ours = order_modp(lam, alpha, p)
        except BadReduction:
            continue
        if ours != grouplaw_order_oracle(p, lam, alpha):
            return False
        done += 1
    return True


def _fiber_identity(rng):
    for _ in range(100):
        a = mpq(rng.randint(-50, 50), rng.randint(1, 9))
        if a in (0, 1):
            continue
        specials = [a, a * a, a * (2 - a)] + ([a * a / (2 * a - 1)] if 2 * a != 1 else [])
        lams = specials + [mpq(rng.randint(-60, 60), rng.randint(1, 11)) for _ in range(50)]
        for lam in lams:
            if lam in (0, 1):
                continue
            v = lattes(lam, a)
            if (v is Infinity or v in (0, 1, lam)) != (lam in specials):
                return False
    return True


def _gamma_invariance():
    data = [(9, 3), (-3, 3), (4, 2), (mpq(3, 128), mpq(3, 8)), (mpq(81, 256), mpq(-9, 16)),
            (mpq(3, 128), mpq(-9, 16)), (5, 2)]
    for lam, alpha in data:
        lam, alpha = mpq(lam), mpq(alpha)
        base = order_bounded(lam, alpha, 12)
        for l2, a2 in ((1 - lam, 1 - alpha), (1 / lam, 1 / alpha)):
            moved = order_bounded(l2, a2, 24)
            if base.within(12) != moved.within(24):
                return False
    for a, b in ((3, -3), (2, 4), (mpq(3, 8), mpq(-9, 16))):
        a, b = mpq(a), mpq(b)
        r1, r2 = _members(t_set_bounded(a, b, 6)), _members(t_set_bounded(b, a, 6))
        if set(r1) != set(r2):
            return False
        if not {1 - lam for lam in r1} <= set(_members(t_set_bounded(1 - a, 1 - b, 12))):
            return False
    return True


def _arith_properties(rng):
    log2 = float(log_height(2))
    for _ in range(1000):
        x = mpq(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        y = mpq(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        if x == 0 or y == 0:
            continue
        if v2(x * y) != v2(x) + v2(y) or rho(x * x) != rho(x):
            return False
        if x + y != 0 and v2(x + y) < min(v2(x), v2(y)):
            return False
        if x != 1:
            h, hb = float(log_height(x)), float(hbar(x))
            if not (hb - 2 * log2 / 3 <= h + 1e-12 and h <= hb + log2 / 3 + 1e-12):
                return False
            if abs(float(hbar(1 - x)) - hb) > 1e-12 or abs(float(hbar(1 / x)) - hb) > 1e-12:
                return False
    return True


def test_criterion_12_properties(report):
    rng = random.Random(SEED)
    parts = {"group-law oracle": _oracle_agreement(rng), "fiber identity": _fiber_identity(rng),
             "S3/Gamma invariance": _gamma_invariance(), "valuations and heights": _arith_properties(rng)}
    failed = [k for k, v in parts.items() if not v]
    report(12, not failed, "property suites", f"failed: {failed}" if failed else "all four hold")
