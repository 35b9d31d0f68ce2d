"""Order of the point with x-coordinate alpha on y^2 = x(x-1)(x-lambda)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import gmpy2
from gmpy2 import mpq, mpz

from .divpoly import legendre_system_at, modp
from .errors import BadReduction, DomainError

DEFAULT_PRIME_BUDGET = 6


@dataclass(frozen=True)
class TorsionResult:
    tag: str  # "order_two" | "order" | "exceeds"
    n: int | None = None
    bound: int | None = None

    @classmethod
    def order_two(cls):
        return cls("order_two", 2)

    @classmethod
    def order_n(cls, n):
        return cls("order", n)

    @classmethod
    def exceeds(cls, bound):
        return cls("exceeds", None, bound)

    @property
    def order(self):
        return self.n

    def within(self, N) -> bool:
        return self.n is not None and self.n <= N

    def to_json(self):
        if self.tag == "exceeds":
            return {"tag": "exceeds_bound", "bound": self.bound}
        if self.tag == "order_two":
            return {"tag": "order_two", "n": 2}
        return {"tag": "order", "n": self.n}

    def __str__(self):
        if self.tag == "exceeds":
            return f"ExceedsBound({self.bound})"
        return "OrderTwo" if self.tag == "order_two" else f"Order({self.n})"


def _check_domain(lam, alpha):
    if lam == 0 or lam == 1:
        raise DomainError("lambda must not be 0 or 1")
    if alpha == 0 or alpha == 1:
        raise DomainError("alpha must not be 0 or 1")


def _lift(v):
    if isinstance(v, int):
        return mpq(v)
    return v


def order_bounded(lam, alpha, N: int) -> TorsionResult:
    """Exact order if it is at most N, found as the least n with psi_n(lam, alpha) = 0."""
    lam, alpha = _lift(lam), _lift(alpha)
    _check_domain(lam, alpha)
    if N < 2:
        raise DomainError("N must be at least 2")
    if alpha == lam:
        return TorsionResult.order_two()
    system = legendre_system_at(lam, alpha)
    for n in range(3, N + 1):
        if system.h(n) == 0:
            return TorsionResult.order_n(n)
    return TorsionResult.exceeds(N)


# ---------------------------------------------------------------- reduction mod p


def is_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p, 40))


def _val(q, p):
    q = mpq(q)
    if q == 0:
        return math.inf
    return gmpy2.remove(q.numerator, p)[1] - gmpy2.remove(q.denominator, p)[1]


def hasse_bound(p: int) -> int:
    return p + 1 + math.isqrt(4 * p - 1) + 1


def order_modp(lam, alpha, p: int) -> int:
    """Order of the reduction of the point at an odd prime of good reduction.

    The point is defined over a quadratic extension; when that extension
    ramifies above 3 the reduction map may shrink 3-power orders, so p = 3
    is refused in that case.
    """
    if p % 2 == 0 or not is_prime(p):
        raise BadReduction(f"{p} is not an odd prime")
    lam, alpha = mpq(lam), mpq(alpha)
    if lam.denominator % p == 0 or alpha.denominator % p == 0:
        raise BadReduction(f"inputs are not {p}-integral")
    lp, ap = modp(lam, p), modp(alpha, p)
    if lp == 0 or lp == 1:
        raise BadReduction(f"lambda is 0 or 1 mod {p}")
    if p == 3:
        rad = alpha * (alpha - 1) * (alpha - lam)
        if rad != 0 and _val(rad, 3) % 2:
            raise BadReduction("point field ramified above 3")
    if ap == 0 or ap == 1 or ap == lp:
        return 2
    system = legendre_system_at(lp, ap)
    for n in range(3, hasse_bound(p) + 1):
        if system.h(n) == 0:
            return n
    raise AssertionError("no order found below the Hasse bound")


@dataclass
class Certificate:
    status: str  # "certified" | "inconclusive"
    orders: dict = field(default_factory=dict)

    @property
    def certified(self):
        return self.status == "certified"

    def to_json(self):
        return {"status": self.status,
                "orders": {str(p): (o if isinstance(o, int) else "bad_reduction")
                           for p, o in sorted(self.orders.items())}}


def good_primes(lam, alpha, count=DEFAULT_PRIME_BUDGET, start=3):
    out, p = [], start
    while len(out) < count:
        if is_prime(p):
            try:
                order_modp_precheck(lam, alpha, p)
                out.append(p)
            except BadReduction:
                pass
        p += 2 if p > 2 else 1
    return out


def order_modp_precheck(lam, alpha, p):
    lam, alpha = mpq(lam), mpq(alpha)
    if lam.denominator % p == 0 or alpha.denominator % p == 0:
        raise BadReduction("not integral")
    lp = modp(lam, p)
    if lp == 0 or lp == 1:
        raise BadReduction("bad reduction")


def nontorsion_certificate(lam, alpha, primes=None) -> Certificate:
    """Certified when two good primes give different reduced orders."""
    lam, alpha = mpq(lam), mpq(alpha)
    _check_domain(lam, alpha)
    if primes is None:
        primes = good_primes(lam, alpha)
    orders = {}
    for p in primes:
        try:
            orders[p] = order_modp(lam, alpha, p)
        except BadReduction:
            orders[p] = None
    seen = {o for o in orders.values() if o is not None}
    return Certificate("certified" if len(seen) > 1 else "inconclusive", orders)


# ---------------------------------------------------------------- group-law oracle


def sqrt_mod(a: int, p: int):
    """Tonelli-Shanks; None when a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


class Fp2:
    """a + b*sqrt(D) over F_p."""

    __slots__ = ("a", "b", "p", "D")

    def __init__(self, a, b, p, D):
        self.a, self.b, self.p, self.D = a % p, b % p, p, D

    def __add__(self, o):
        o = self._c(o)
        return Fp2(self.a + o.a, self.b + o.b, self.p, self.D)

    def __sub__(self, o):
        o = self._c(o)
        return Fp2(self.a - o.a, self.b - o.b, self.p, self.D)

    def __mul__(self, o):
        o = self._c(o)
        return Fp2(self.a * o.a + self.D * self.b * o.b, self.a * o.b + self.b * o.a, self.p, self.D)

    __rmul__ = __mul__

    def inv(self):
        n = (self.a * self.a - self.D * self.b * self.b) % self.p
        ni = pow(n, -1, self.p)
        return Fp2(self.a * ni, -self.b * ni, self.p, self.D)

    def _c(self, o):
        return o if isinstance(o, Fp2) else Fp2(o, 0, self.p, self.D)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __eq__(self, o):
        o = self._c(o)
        return self.a == o.a and self.b == o.b


def _ec_add(P, Q, a2, a4):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2).is_zero():
            return None
        s = (x1 * x1 * 3 + x1 * a2 * 2 + a4) * (y1 * 2).inv()
    else:
        s = (y2 - y1) * (x2 - x1).inv()
    x3 = s * s - a2 - x1 - x2
    y3 = s * (x1 - x3) - y1
    return (x3, y3)


def grouplaw_order_oracle(p: int, lam: int, alpha: int) -> int:
    """Order of (alpha, y) by repeated chord-tangent addition over F_p or F_p^2."""
    if p % 2 == 0 or not is_prime(p):
        raise DomainError("p must be an odd prime")
    lam, alpha = int(lam) % p, int(alpha) % p
    if lam in (0, 1):
        raise DomainError("lambda must not be 0 or 1 mod p")
    c = alpha * (alpha - 1) * (alpha - lam) % p
    if c == 0:
        return 2
    r = sqrt_mod(c, p)
    if r is not None:
        D = 1 if p == 3 else next(d for d in range(2, p) if sqrt_mod(d, p) is None)
        y = Fp2(r, 0, p, D)
    else:
        D = c
        y = Fp2(0, 1, p, D)
    x = Fp2(alpha, 0, p, D)
    a2 = Fp2(-(1 + lam), 0, p, D)
    a4 = Fp2(lam, 0, p, D)
    P = (x, y)
    Q, n = P, 1
    limit = p * p + 2 * p + 2
    while Q is not None:
        Q = _ec_add(Q, P, a2, a4)
        n += 1
        if n > limit:
            raise AssertionError("group-law order exceeded the field bound")
    return n


__all__ = ["TorsionResult", "order_bounded", "order_modp", "nontorsion_certificate", "Certificate",
           "grouplaw_order_oracle", "good_primes", "hasse_bound", "sqrt_mod"]
