"""Bounded simultaneous torsion sets T_N(alpha, beta) over Q or a quotient ring."""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
from gmpy2 import mpq

from . import config
from .divpoly import psi_tilde
from .errors import DomainError, NumericPrecisionExceeded
from .poly import QQ, UPoly, eval_outer_in, gcd, rational_roots
from .quotring import FieldElem, QuotRing, aberth_roots
from .torsion import order_bounded

LAM = "lambda"


def field_of(*xs):
    for x in xs:
        if isinstance(x, FieldElem):
            return x.parent
    return QQ


def _norm_elem(x, K):
    if K is QQ:
        return mpq(x)
    return K.coerce(x)


def specialised(n: int, alpha, K) -> UPoly:
    """psi~_n(lambda, alpha) as a polynomial in lambda over K."""
    return eval_outer_in(psi_tilde(n), alpha, K)


def _pairwise_coprime(polys):
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if gcd(polys[i], polys[j]).degree > 0:
                return False
    return True


def _product(polys, K):
    acc = UPoly((K.one,), K, LAM)
    for p in polys:
        acc = acc * p
    return acc


def common_root_poly(alpha, beta, N: int) -> UPoly:
    """Monic gcd of prod psi~_n(lambda, alpha) and prod psi~_n(lambda, beta) over 3 <= n <= N."""
    K = field_of(alpha, beta)
    alpha, beta = _norm_elem(alpha, K), _norm_elem(beta, K)
    if alpha == beta:
        raise DomainError("alpha and beta must differ")
    for v in (alpha, beta):
        if v == 0 or v == 1:
            raise DomainError("alpha and beta must avoid 0 and 1")
    fa = [specialised(n, alpha, K) for n in range(3, N + 1)]
    fb = [specialised(n, beta, K) for n in range(3, N + 1)]
    fa = [p.monic() for p in fa if p.degree > 0]
    fb = [p.monic() for p in fb if p.degree > 0]
    one = UPoly((K.one,), K, LAM)
    if _pairwise_coprime(fa) and _pairwise_coprime(fb):
        # gcd is multiplicative across pairwise coprime factors
        acc = one
        for p in fa:
            for q in fb:
                g = gcd(p, q)
                if g.degree > 0:
                    acc = acc * g
        return acc.monic()
    g = gcd(_product(fa, K), _product(fb, K))
    return g.monic() if g.degree >= 0 else one


@dataclass
class TSetReport:
    members: list = field(default_factory=list)  # (lambda, order_alpha, order_beta)
    residual: UPoly | None = None
    complete: bool = False
    discarded: list = field(default_factory=list)
    gcd_degree: int = 0

    def member_set(self):
        return [m[0] for m in self.members]

    def to_json(self, fmt):
        return {"members": [{"lambda": fmt(lam), "orders": [oa, ob]} for lam, oa, ob in self.members],
                "residual": [fmt(c) for c in self.residual.c] if self.residual is not None else [],
                "complete": self.complete,
                "discarded": [fmt(d) for d in self.discarded],
                "gcd_degree": self.gcd_degree}


def orders_at(lam, alpha, beta, N):
    return order_bounded(lam, alpha, N), order_bounded(lam, beta, N)


def _linear(root, K):
    return UPoly((-root, K.one), K, LAM)


def _sort_key(x):
    if isinstance(x, FieldElem):
        return (1, tuple(x.coeffs()))
    return (0, (x,))


def _reconstruct(z, K: QuotRing, prec):
    """Exact element of K whose image under the fixed embedding is z, via PSLQ."""
    theta = K.roots(prec)[0]
    with mpmath.workprec(prec):
        omega = mpmath.sqrt(2) + mpmath.pi / 7  # generic real weight folding Re and Im together
        basis = [theta ** i for i in range(K.n)]
        vec = [z] + [mpmath.mpf(1) if i == 0 else basis[i] for i in range(K.n)]
        vec = [mpmath.re(v) + omega * mpmath.im(v) for v in vec]
        rel = mpmath.pslq(vec, maxcoeff=10 ** 12, maxsteps=10 ** 5, tol=mpmath.mpf(2) ** (-(prec * 3 // 4)))
    if not rel or rel[0] == 0:
        return None
    return K.elem([mpq(-c, rel[0]) for c in rel[1:]])


def _squarefree_part(p: UPoly) -> UPoly:
    g = gcd(p, p.derivative())
    return p.exact_quo(g).monic() if g.degree > 0 else p


def _candidate_roots(residual: UPoly, K, candidates, prec):
    """Roots of residual in K: supplied candidates first, then rational or reconstructed ones."""
    found = []
    for c in candidates or []:
        c = _norm_elem(c, K)
        if residual(c) == 0 and c not in found:
            found.append(c)
    if K is QQ:
        for r in rational_roots(residual):
            if r not in found:
                found.append(r)
        return found
    sf = _squarefree_part(residual)
    for c in found:
        if sf.degree > 0 and sf(c) == 0:
            sf = sf.exact_quo(_linear(c, K))
    if sf.degree <= 0:
        return found
    theta = K.roots(prec)[0]
    with mpmath.workprec(prec):
        coeffs = [c.to_complex(theta) for c in sf.c]
    try:
        zs = aberth_roots(coeffs, prec)
    except NumericPrecisionExceeded:
        return found
    for z in zs:
        cand = _reconstruct(z, K, prec)
        if cand is not None and cand not in found and sf(cand) == 0:
            found.append(cand)
    return found


def t_set_bounded(alpha, beta, N: int, candidates=None, prec=None) -> TSetReport:
    K = field_of(alpha, beta, *(candidates or []))
    alpha, beta = _norm_elem(alpha, K), _norm_elem(beta, K)
    prec = prec or config.precision_bits()
    members = []
    # endpoints: one of the two points has order 2 there
    for lam, other in ((alpha, beta), (beta, alpha)):
        res = order_bounded(lam, other, N)
        if res.within(N):
            oa, ob = (2, res.n) if lam == alpha else (res.n, 2)
            members.append((lam, oa, ob))
    g = common_root_poly(alpha, beta, N)
    report = TSetReport(gcd_degree=max(g.degree, 0))
    residual = g
    for r in _candidate_roots(g, K, candidates, prec):
        if residual.degree <= 0 or residual(r) != 0:
            continue
        if r == 0 or r == 1:
            residual = residual.exact_quo(_linear(r, K))
            report.discarded.append(r)
            continue
        oa, ob = orders_at(r, alpha, beta, N)
        if oa.within(N) and ob.within(N):
            residual = residual.exact_quo(_linear(r, K))
            if all(m[0] != r for m in members):
                members.append((r, oa.n, ob.n))
    members.sort(key=lambda m: _sort_key(m[0]))
    report.members = members
    report.residual = residual
    report.complete = residual.degree <= 0
    return report


__all__ = ["common_root_poly", "t_set_bounded", "TSetReport", "orders_at", "specialised", "field_of"]
