"""2-adic screens that cut simultaneous torsion down to finite candidate lists."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .arith import Residue, fmt_rational, mod4_class, rho, v2
from .divpoly import Infinity, weierstrass_system_at
from .errors import DomainError, NotTwoIntegral
from .poly import QQ, UPoly
from .quotring import QuotRing
from .torsion import TorsionResult, nontorsion_certificate, order_bounded

DEFAULT_VERIFY_BOUND = 16


def _permissible(lam):
    return lam is not Infinity and lam != 0 and lam != 1


def s_set(alpha):
    """alpha, alpha^2, alpha(2 - alpha), alpha^2/(2 alpha - 1), minus 0, 1 and infinity."""
    if isinstance(alpha, int):
        alpha = mpq(alpha)
    vals = [alpha, alpha * alpha, alpha * (2 - alpha)]
    den = 2 * alpha - 1
    vals.append(Infinity if den == 0 else alpha * alpha / den)
    out = []
    for v in vals:
        if _permissible(v) and v not in out:
            out.append(v)
    return out


@dataclass
class Verdict:
    tag: str  # "empty" | "subset" | "inconclusive"
    candidates: list = field(default_factory=list)
    clause: str = ""

    def to_json(self):
        return {"tag": self.tag, "clause": self.clause,
                "candidates": [fmt_rational(c) for c in self.candidates]}


def _v(x):
    return v2(mpq(x))


def r_disjoint(alpha, beta):
    """(True, clause) when a sufficient condition for R(alpha) and R(beta) to be disjoint holds."""
    alpha, beta = mpq(alpha), mpq(beta)
    ra, rb = rho(alpha), rho(beta)
    if ra != rb:
        return True, "disjoint-1"
    # clause 2 needs a residue outside {0, 1, inf}: impossible for rationals
    if ra is Residue.ONE:
        va1 = _v(alpha - 1)
        if 0 < va1 <= 1 and _v(alpha - beta) == va1:
            return True, "disjoint-3"
    elif ra is Residue.ZERO:
        if _v(alpha) <= 1 and _v(alpha - beta) == _v(alpha):
            return True, "disjoint-4"
    else:
        if _v(alpha) >= -1 and _v(alpha - beta) == _v(beta):
            return True, "disjoint-5"
    return False, ""


def _r_disjoint_sym(alpha, beta):
    ok, clause = r_disjoint(alpha, beta)
    if ok:
        return ok, clause
    return r_disjoint(beta, alpha)


def _m4(x):
    try:
        return mod4_class(x)
    except NotTwoIntegral:
        return None


def _check_pair(alpha, beta):
    if alpha in (0, 1) or beta in (0, 1):
        raise DomainError("alpha and beta must avoid 0 and 1")
    if alpha == beta:
        raise DomainError("alpha and beta must differ")


def _subset(cands, clause):
    out = []
    for c in cands:
        if _permissible(c) and c not in out:
            out.append(c)
    return Verdict("subset" if out else "empty", sorted(out), clause)


def screen_rational(alpha, beta) -> Verdict:
    alpha, beta = mpq(alpha), mpq(beta)
    _check_pair(alpha, beta)
    if rho(alpha) != rho(beta):
        return Verdict("empty", [], "rho-differ")
    for a, b in ((alpha, beta), (beta, alpha)):
        ma, mb = _m4(a), _m4(b)
        if ma == 3 and mb == 1:
            return _subset([a * a, b], "mod4-2")
    for a, b in ((alpha, beta), (beta, alpha)):
        ma, mb = _m4(a), _m4(b)
        if ma == 2 and mb == 0:
            return _subset([a * (2 - a), b], "mod4-3")
    for a, b in ((alpha, beta), (beta, alpha)):
        if _v(a) == -1 and _v(b) <= -2:
            return _subset([a * a / (2 * a - 1), b], "mod4-4")
    ok, clause = _r_disjoint_sym(alpha, beta)
    if ok:
        return _subset(s_set(alpha) + s_set(beta), clause)
    return Verdict("inconclusive", [], "none")


@dataclass
class Decision:
    status: str  # "exact" | "inconclusive"
    members: list = field(default_factory=list)
    clause: str = ""
    orders: dict = field(default_factory=dict)
    unresolved: list = field(default_factory=list)

    def to_json(self):
        return {"status": self.status, "clause": self.clause,
                "members": [fmt_rational(m) for m in self.members],
                "orders": {fmt_rational(k): [o.to_json() for o in v] for k, v in self.orders.items()},
                "unresolved": [fmt_rational(u) for u in self.unresolved]}


def orders_at(lam, alpha, beta, N):
    return order_bounded(lam, alpha, N), order_bounded(lam, beta, N)


def _rejected(lam, x, res: TorsionResult):
    if res.within(10 ** 9):
        return False
    return nontorsion_certificate(lam, x).certified


def decide_T_rational(alpha, beta, N=DEFAULT_VERIFY_BOUND) -> Decision:
    """Exact T(alpha, beta) when a screen applies and each candidate is settled."""
    verdict = screen_rational(alpha, beta)
    if verdict.tag == "inconclusive":
        return Decision("inconclusive", [], verdict.clause)
    members, orders, unresolved = [], {}, []
    for lam in verdict.candidates:
        oa, ob = orders_at(lam, alpha, beta, N)
        orders[lam] = (oa, ob)
        if oa.within(N) and ob.within(N):
            members.append(lam)
        elif not ((not oa.within(N) and _rejected(lam, mpq(alpha), oa))
                  or (not ob.within(N) and _rejected(lam, mpq(beta), ob))):
            unresolved.append(lam)
    status = "exact" if not unresolved else "inconclusive"
    return Decision(status, sorted(members), verdict.clause, orders, unresolved)


# ---------------------------------------------------------------- roots of unity


def cyclotomic(k: int) -> UPoly:
    t = UPoly((0, 1), QQ, "t")
    p = t ** k - 1
    for dd in range(1, k):
        if k % dd == 0:
            p = p.exact_quo(cyclotomic(dd))
    return p


def roots_of_unity_T(k: int, verify=False, N=DEFAULT_VERIFY_BOUND):
    """Members of T(zeta) among roots of unity, as exponent data (sign, power of zeta)."""
    if k < 2:
        raise DomainError("k must be at least 2")
    if k == 2:
        asserted = [(1, 1)]
        branch = "minus-one"
    elif k in (3, 6, 12):
        asserted = [(1, 1), (1, 2), (-1, 2)]
        branch = "3-6-12"
    else:
        asserted = [(1, 1), (1, 2)]
        branch = "otherwise"
    report = {"k": k, "branch": branch,
              "members": [("-" if s < 0 else "") + ("zeta" if e == 1 else f"zeta^{e}") for s, e in asserted]}
    if verify:
        K = QuotRing(cyclotomic(k), "t")
        z = K.gen() if K.n > 1 else K.coerce(-1)
        results = []
        for s, e in asserted:
            lam = (z ** e) * s
            res = order_bounded(lam, z, N) if _permissible(lam) else None
            results.append(res)
        report["orders"] = results
        report["verified"] = all(r is not None and r.within(N) for r in results)
    return report


# ---------------------------------------------------------------- Weierstrass


def cw_candidates(alpha, beta, gamma):
    """(A, B) making two of the three x-coordinates roots of x^3 + A x + B."""
    pts = [alpha, beta, gamma]
    if len({str(p) for p in pts}) < 3 and (alpha == beta or alpha == gamma or beta == gamma):
        raise DomainError("x-coordinates must be pairwise distinct")
    out = []
    for a, b in ((alpha, beta), (alpha, gamma), (beta, gamma)):
        out.append((-(a * a + a * b + b * b), a * b * (a + b)))
    return out


def _w_order(A, B, x, N):
    if x * x * x + A * x + B == 0:
        return TorsionResult.order_two()
    system = weierstrass_system_at(A, B, x)
    for n in range(3, N + 1):
        if system.h(n) == 0:
            return TorsionResult.order_n(n)
    return TorsionResult.exceeds(N)


def cw_verify(alpha, beta, gamma, N=DEFAULT_VERIFY_BOUND):
    alpha, beta, gamma = mpq(alpha), mpq(beta), mpq(gamma)
    rows, dropped = [], []
    for A, B in cw_candidates(alpha, beta, gamma):
        if 4 * A ** 3 + 27 * B ** 2 == 0:
            dropped.append({"A": A, "B": B, "reason": "singular"})
            continue
        rows.append({"A": A, "B": B, "orders": [_w_order(A, B, x, N) for x in (alpha, beta, gamma)]})
    return rows, dropped


__all__ = ["s_set", "r_disjoint", "screen_rational", "decide_T_rational", "Verdict", "Decision",
           "orders_at", "roots_of_unity_T", "cyclotomic", "cw_candidates", "cw_verify"]
