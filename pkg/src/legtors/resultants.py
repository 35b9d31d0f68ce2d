"""Eliminating lambda between two torsion conditions; checks against the bundled component corpus."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product

from gmpy2 import mpq

from .divpoly import d, delta, legendre_psi, psi_tilde
from .errors import DomainError, InexactDivision, ParseError, VerificationFailed
from .poly import (QQ, ZZ, PolyRing, UPoly, bi_degrees, bi_terms, bipoly, divides, parse_bipoly,
                   resultant, squarefree_bivariate, transpose)

R_M_CAP = 6
PAIR_CAP = 8
PAIR_ORDERS = (3, 4, 6)

_B = PolyRing(ZZ, "b")
_AB = PolyRing(_B, "a")


def _in_lambda(p_x_over_lam: UPoly, var: str) -> UPoly:
    """Turn psi(lambda, x) into a polynomial in lambda over Z[b][a] with x := var."""
    t = transpose(p_x_over_lam)  # outer lambda, inner x
    coeffs = []
    for cf in t.c:
        if var == "a":
            coeffs.append(UPoly([UPoly((c,), ZZ, "b") for c in cf.c], _B, "a"))
        else:
            coeffs.append(UPoly((UPoly(list(cf.c), ZZ, "b"),), _B, "a"))
    return UPoly(coeffs, _AB, "lambda")


def _a_minus_b():
    return bipoly({(1, 0): 1, (0, 1): -1}, "a", "b", ZZ)


@dataclass
class ResultantRecord:
    key: tuple
    res: UPoly
    poly: UPoly
    squarefree: bool | None = None
    removed: int = 0

    @property
    def bidegree(self):
        da, db, _ = bi_degrees(self.poly)
        return da, db

    def to_json(self):
        return {"key": list(self.key), "bidegree": list(self.bidegree), "removed_power": self.removed,
                "terms": len(bi_terms(self.poly)), "squarefree": self.squarefree}


def _strip(res: UPoly, k: int) -> UPoly:
    if k == 0:
        return res
    q, r = res.divrem_exact(_a_minus_b() ** k, exact=False)
    if r:
        raise InexactDivision(f"(a - b)^{k} does not divide the resultant")
    return q


@lru_cache(maxsize=None)
def r_m(m: int) -> ResultantRecord:
    """Res_lambda(psi_m(lambda, a), psi_m(lambda, b)) / (a - b)^d(m)."""
    if not 3 <= m <= R_M_CAP:
        raise DomainError(f"m must lie in [3, {R_M_CAP}]")
    psi = legendre_psi(m)
    res = resultant(_in_lambda(psi, "a"), _in_lambda(psi, "b"))
    return ResultantRecord(("m", m), res, _strip(res, d(m)), removed=d(m))


@lru_cache(maxsize=None)
def r_pair(n: int, n2: int) -> ResultantRecord:
    """Res_lambda(psi~_n(lambda, a), psi~_n2(lambda, b)), with the a = b part removed when n = n2."""
    if not (3 <= n <= PAIR_CAP and 3 <= n2 <= PAIR_CAP):
        raise DomainError(f"orders must lie in [3, {PAIR_CAP}]")
    res = resultant(_in_lambda(psi_tilde(n), "a"), _in_lambda(psi_tilde(n2), "b"))
    k = bi_degrees(psi_tilde(n))[1] if n == n2 else 0
    return ResultantRecord(("pair", n, n2), res, _strip(res, k), removed=k)


def verify_squarefree(m: int) -> bool:
    rec = r_m(m)
    rec.squarefree = squarefree_bivariate(rec.poly)
    return rec.squarefree


def swap_ab(p: UPoly) -> UPoly:
    return bipoly({(j, i): c for (i, j), c in bi_terms(p).items()}, "a", "b", p.ring.base)


def eval_ab(p: UPoly, a0, b0):
    return sum(mpq(c) * mpq(a0) ** i * mpq(b0) ** j for (i, j), c in bi_terms(p).items())


# ---------------------------------------------------------------- corpus


@dataclass
class CorpusEntry:
    bidegree: tuple
    text: str
    line: int
    poly: UPoly


def parse_corpus(text: str):
    entries, current = [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        if s.startswith("["):
            if not s.endswith("]"):
                raise ParseError(f"bad section header {s!r}", lineno)
            try:
                da, db = (int(x) for x in s[1:-1].split(","))
            except ValueError:
                raise ParseError(f"bad section header {s!r}", lineno) from None
            current = (da, db)
            continue
        if current is None:
            raise ParseError("polynomial before any section header", lineno)
        entries.append(CorpusEntry(current, s, lineno, parse_bipoly(s, "a", "b", ZZ, line=lineno)))
    return entries


def load_corpus(path=None):
    if path is None:
        text = resources.files("legtors").joinpath("corpus/table1.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return parse_corpus(text)


def _psi_ab(n: int, swapped: bool) -> UPoly:
    """psi_n(lambda=a, x=b) as a polynomial in a over Z[b]; swapped gives psi_n(b, a)."""
    p = transpose(legendre_psi(n))  # outer lambda, inner x
    p = bipoly(bi_terms(p), "a", "b", ZZ)
    return swap_ab(p) if swapped else p


def _quick_reject(f: UPoly, p: UPoly, rng, tries=5) -> bool:
    """Cheap necessary test: f(a, b0) must divide p(a, b0) for a few integers b0."""
    for _ in range(tries):
        b0 = rng.randint(-50, 50)
        fs = UPoly([mpq(cf(b0)) for cf in f.c], QQ, "a")
        ps = UPoly([mpq(cf(b0)) for cf in p.c], QQ, "a")
        if fs.degree < f.degree:
            continue
        if ps.divrem(fs)[1]:
            return True
    return False


def _divides(f, p, rng):
    return not _quick_reject(f, p, rng) and divides(f, p)


@dataclass
class TableReport:
    passed: list = field(default_factory=list)
    failed: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failed

    def to_json(self):
        return {"ok": self.ok, "passed": self.passed, "failed": self.failed}


def _orders_with_delta(dd, limit=64):
    return [n for n in range(3, limit) if delta(n) == dd]


def verify_entry(entry: CorpusEntry, rng=None, max_m=R_M_CAP):
    """Source that the entry divides, or None."""
    rng = rng or random.Random(0)
    f = entry.poly
    da, db = entry.bidegree
    got = bi_degrees(f)[:2]
    if got != (da, db):
        return None, f"bidegree {got} differs from section {(da, db)}"
    if db == 2 * da or da == 2 * db:
        swapped = da == 2 * db
        dd = min(da, db)
        for n in _orders_with_delta(dd):
            if _divides(f, _psi_ab(n, swapped), rng):
                return (f"psi_{n}(b,a)" if swapped else f"psi_{n}(a,b)"), None
        return None, "no bicyclotomic source"
    if da == db:
        for n, n2 in product(PAIR_ORDERS, repeat=2):
            if n == n2 and n <= max_m:
                if _divides(f, r_m(n).poly, rng):
                    return f"R_{n}", None
            if _divides(f, r_pair(n, n2).poly, rng):
                return f"Res(psi~_{n}, psi~_{n2})", None
        return None, "no resultant source"
    return None, "bidegree outside the verified shapes"


def verify_table1(path=None, strict=False, max_m=R_M_CAP, seed=0) -> TableReport:
    entries = load_corpus(path)
    rng = random.Random(seed)
    rep = TableReport()
    for e in entries:
        src, why = verify_entry(e, rng, max_m)
        item = {"line": e.line, "bidegree": list(e.bidegree), "poly": e.text}
        if src:
            item["source"] = src
            rep.passed.append(item)
        else:
            item["reason"] = why
            rep.failed.append(item)
    if strict and rep.failed:
        raise VerificationFailed("corpus polynomials failed", [f["poly"] for f in rep.failed])
    return rep


__all__ = ["r_m", "r_pair", "verify_squarefree", "verify_table1", "load_corpus", "parse_corpus",
           "ResultantRecord", "TableReport", "swap_ab", "eval_ab", "verify_entry"]
