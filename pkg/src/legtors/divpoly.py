"""Division polynomials of the Legendre and Weierstrass families.

Both families satisfy the same three-term recurrences; :class:`RecurrenceSystem`
runs them over any ring whose elements support ``+ - *``.
"""

from __future__ import annotations

import math
from functools import lru_cache

import gmpy2
from gmpy2 import mpq, mpz

from . import config
from .arith import v2
from .errors import DomainError, InexactDivision
from .poly import ZZ, PolyRing, UPoly, Zmod, bipoly, bi_degrees, eval_outer

LAM = "lambda"
X = "x"


# ---------------------------------------------------------------- degree data


def d(n: int) -> int:
    return (n * n - 1) // 4


def e(n: int) -> int:
    return max(0, v2(n) - 1)


def a_coeff(n: int) -> int:
    m, r = divmod(n, 2)
    if r:
        return -1 if m % 2 else 1
    return m if (m - 1) % 2 == 0 else -m


def _prime_divisors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def delta(n: int) -> int:
    """lambda-degree of the bicyclotomic factor of order n (n >= 3)."""
    if n < 3:
        raise DomainError("delta(n) needs n >= 3")
    val = mpq(n * n, 4 if n % 2 else 12)
    for p in _prime_divisors(n):
        val *= 1 - mpq(1, p * p)
    assert val.denominator == 1
    return int(val)


class DegreeData:
    __slots__ = ("n", "d", "e", "delta", "a")

    def __init__(self, n):
        self.n = n
        self.d = d(n)
        self.e = e(n)
        self.delta = delta(n) if n >= 3 else 0
        self.a = a_coeff(n)

    def __repr__(self):
        return f"DegreeData(n={self.n}, d={self.d}, e={self.e}, delta={self.delta}, a={self.a})"


# ---------------------------------------------------------------- recurrence


def _needed(n):
    if n <= 4:
        return ()
    m, r = divmod(n, 2)
    if r == 0:
        return (m - 2, m - 1, m, m + 1, m + 2)
    if n % 4 == 1:
        m = (n - 1) // 4
        return (2 * m - 1, 2 * m, 2 * m + 1, 2 * m + 2)
    m = (n + 1) // 4
    return (2 * m - 2, 2 * m - 1, 2 * m, 2 * m + 1)


class RecurrenceSystem:
    """h_1 = h_2 = 1, given h_3, h_4 and 4f; memoised up to ``memo_cap``."""

    def __init__(self, one, four_f, h3, h4, memo_cap=None):
        self.one = one
        self.four_f = four_f
        self.memo_cap = memo_cap or config.DEFAULT_MEMO_CAP
        self.memo = {1: one, 2: one, 3: h3, 4: h4}

    def _step(self, n, h):
        if n % 2 == 0:
            m = n // 2
            return h[m] * (h[m + 2] * h[m - 1] * h[m - 1] - h[m - 2] * h[m + 1] * h[m + 1])
        if n % 4 == 1:
            m = (n - 1) // 4
            a, b = h[2 * m], h[2 * m + 1]
            return self.four_f * h[2 * m + 2] * (a * a * a) - h[2 * m - 1] * (b * b * b)
        m = (n + 1) // 4
        a, b = h[2 * m - 1], h[2 * m]
        return h[2 * m + 1] * (a * a * a) - self.four_f * h[2 * m - 2] * (b * b * b)

    def plan(self, n):
        """Indices needed for h_n, in increasing order."""
        seen, stack = set(), [n]
        while stack:
            k = stack.pop()
            if k in seen or k in self.memo:
                continue
            seen.add(k)
            stack.extend(_needed(k))
        return sorted(seen)

    def h(self, n):
        if n < 1:
            raise ValueError("index must be positive")
        if n in self.memo:
            return self.memo[n]
        scratch = dict(self.memo)
        for k in self.plan(n):
            scratch[k] = self._step(k, scratch)
            if k <= self.memo_cap:
                self.memo[k] = scratch[k]
        return scratch[n]

    __call__ = h


# ---------------------------------------------------------------- Legendre


def _legendre_ring(base=ZZ):
    return PolyRing(PolyRing(base, LAM), X)


def _legendre_seeds(base=ZZ):
    """(4f, psi_3, psi_4) as polynomials in x over base[lambda]."""
    four_f = bipoly({(2, 0): 16, (3, 0): -32, (4, 0): 16}, X, LAM, base) * \
        bipoly({(2, 0): 1, (1, 1): -2, (0, 2): 1}, X, LAM, base)
    psi3 = bipoly({(4, 0): 3, (3, 0): -4, (3, 1): -4, (2, 1): 6, (0, 2): -1}, X, LAM, base)
    psi4 = bipoly({(2, 0): 2, (0, 1): -2}, X, LAM, base) * \
        bipoly({(2, 0): 1, (1, 0): -2, (0, 1): 1}, X, LAM, base) * \
        bipoly({(2, 0): 1, (1, 1): -2, (0, 1): 1}, X, LAM, base)
    return four_f, psi3, psi4


_LEGENDRE = {}


def legendre_system(base=ZZ) -> RecurrenceSystem:
    key = base
    if key not in _LEGENDRE:
        four_f, psi3, psi4 = _legendre_seeds(base)
        one = _legendre_ring(base).one
        one = UPoly((one.c[0],), one.ring, X) if isinstance(one, UPoly) and one.var == X else \
            UPoly((PolyRing(base, LAM).one,), PolyRing(base, LAM), X)
        _LEGENDRE[key] = RecurrenceSystem(one, four_f, psi3, psi4)
    return _LEGENDRE[key]


def legendre_psi(n: int, base=ZZ) -> UPoly:
    """psi_n as a polynomial in x over base[lambda]."""
    return legendre_system(base).h(n)


def _divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


_TILDE = {}


def psi_tilde(n: int) -> UPoly:
    """Factor of psi_n whose roots are x-coordinates of points of exact order n."""
    if n in _TILDE:
        return _TILDE[n]
    if n <= 2:
        res = legendre_psi(1)
    else:
        res = legendre_psi(n)
        for k in _divisors(n)[:-1]:
            if k > 2:
                q, r = res.divrem_exact(psi_tilde(k), exact=False)
                if r:
                    raise InexactDivision(f"psi_{n} not divisible by psi~_{k}")
                res = q
    _TILDE[n] = res
    return res


def _seed_values(lam, x):
    x2 = x * x
    xm1 = x - 1
    xml = x - lam
    four_f = 16 * (x2 * xm1 * xm1 * xml * xml)
    h3 = 3 * x2 * x2 - 4 * (lam + 1) * x2 * x + 6 * lam * x2 - lam * lam
    h4 = 2 * (x2 - lam) * (x2 - 2 * x + lam) * (x2 - 2 * lam * x + lam)
    return four_f, h3, h4


class _ModP:
    """Minimal prime-field element so the recurrence runs over F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.p = p
        self.v = mpz(v) % p

    def _o(self, o):
        return o.v if isinstance(o, _ModP) else mpz(o)

    def __add__(self, o):
        return _ModP(self.v + self._o(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return _ModP(self.v - self._o(o), self.p)

    def __rsub__(self, o):
        return _ModP(self._o(o) - self.v, self.p)

    def __mul__(self, o):
        return _ModP(self.v * self._o(o), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return _ModP(-self.v, self.p)

    def __eq__(self, o):
        return self.v == self._o(o) % self.p

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return bool(self.v)

    def __repr__(self):
        return f"{int(self.v)} mod {self.p}"


def modp(v, p):
    """Reduce an integer or p-integral rational into F_p."""
    q = mpq(v)
    if q.denominator % p == 0:
        raise DomainError(f"{v} is not {p}-integral")
    return _ModP(q.numerator * pow(mpz(q.denominator), -1, p), p)


def legendre_system_at(lam, x) -> RecurrenceSystem:
    """Recurrence with lambda and x already substituted (ring elements)."""
    four_f, h3, h4 = _seed_values(lam, x)
    one = x * 0 + 1
    return RecurrenceSystem(one, four_f, h3, h4)


def legendre_psi_eval(n: int, lam, x, p=None):
    """psi_n(lam, x) computed directly in the ring of lam and x (or in F_p if p given)."""
    if p is not None:
        lam, x = modp(lam, p), modp(x, p)
    elif isinstance(lam, int) and isinstance(x, int):
        lam, x = mpz(lam), mpz(x)
    return legendre_system_at(lam, x).h(n)


# ---------------------------------------------------------------- congruences and degrees


def _g_power(ring_base, dd, scale):
    g = bipoly({(0, 1): 1, (2, 0): -1}, X, LAM, ring_base)
    return (g ** dd).scale(ring_base.coerce(scale)) if dd else \
        UPoly((PolyRing(ring_base, LAM).coerce(scale),), PolyRing(ring_base, LAM), X)


class _Packed:
    """Element of (Z/2^k)[y] stored as one integer, ``s`` bits per coefficient.

    Coefficients stay in [0, 2^k); after each product a slotwise mask reduces
    them again, so no Python-level loop over coefficients is needed.
    """

    __slots__ = ("v", "ctx")

    def __init__(self, v, ctx):
        self.v = v
        self.ctx = ctx

    def __mul__(self, o):
        if isinstance(o, int):
            return _Packed((self.v * (o % self.ctx.mod)) & self.ctx.mask, self.ctx)
        return _Packed((self.v * o.v) & self.ctx.mask, self.ctx)

    __rmul__ = __mul__

    def __sub__(self, o):
        c = self.ctx
        return _Packed((self.v + c.full - o.v) & c.mask, c)

    def __add__(self, o):
        return _Packed((self.v + o.v) & self.ctx.mask, self.ctx)


class _PackCtx:
    def __init__(self, k, slots, slot_bits):
        self.k = k
        self.mod = 1 << k
        self.s = slot_bits
        self.mask = gmpy2.pack([mpz(self.mod - 1)] * slots, slot_bits)
        self.full = gmpy2.pack([mpz(self.mod)] * slots, slot_bits)

    def from_terms(self, terms, stride):
        """terms {(i_x, j_lambda): c} under lambda -> y^stride, x -> y."""
        acc = {}
        for (i, j), c in terms.items():
            pos = i + j * stride
            acc[pos] = (acc.get(pos, 0) + int(c)) % self.mod
        size = max(acc) + 1 if acc else 1
        return _Packed(gmpy2.pack([mpz(acc.get(i, 0)) for i in range(size)], self.s), self)


_PACK_N = 64
_PACK_STRIDE = 2 * d(_PACK_N) + 1


@lru_cache(maxsize=None)
def _packed_system():
    """psi_n mod 64 for n <= 64 under the injective substitution lambda -> x^stride."""
    from .poly import bi_terms
    stride = _PACK_STRIDE
    slots = (d(_PACK_N) + 4) * stride + stride
    ctx = _PackCtx(6, slots, 2 * 6 + slots.bit_length() + 2)
    four_f, psi3, psi4 = _legendre_seeds()
    pk = lambda p: ctx.from_terms(bi_terms(p), stride)
    return ctx, RecurrenceSystem(ctx.from_terms({(0, 0): 1}, stride), pk(four_f), pk(psi3), pk(psi4),
                                 memo_cap=_PACK_N + 8)


def _packed_psi(n, k):
    """Slot list of psi_n mod 2^k, indexed by i + j*stride (x^i lambda^j)."""
    ctx, sys_ = _packed_system()
    v = sys_.h(n).v
    red = gmpy2.pack([mpz((1 << k) - 1)] * ((v.bit_length() // ctx.s) + 1), ctx.s)
    return v & red, ctx


def _packed_target(n, k):
    """2^e(n) (lambda - x^2)^d(n) mod 2^k in the same packed layout, by the binomial theorem."""
    ctx, _ = _packed_system()
    ee, dd = e(n), d(n)
    mod = 1 << k
    slots = [mpz(0)] * (dd * _PACK_STRIDE + 1)
    for j in range(dd + 1):
        c = (2 ** ee * math.comb(dd, j) * (-1) ** j) % mod
        if c:
            slots[2 * j + (dd - j) * _PACK_STRIDE] = mpz(c)
    return gmpy2.pack(slots, ctx.s)


def congruence_check_legendre(n: int) -> bool:
    """psi_n == 2^e(n) (lambda - x^2)^d(n) mod 2^(e(n)+1)."""
    return congruence_mod(n, e(n) + 1)


@lru_cache(maxsize=None)
def congruence_mod(n: int, k: int) -> bool:
    """Whether psi_n == 2^e(n) (lambda - x^2)^d(n) modulo 2^k."""
    ee, dd = e(n), d(n)
    if n <= _PACK_N and k <= 6:
        val, _ = _packed_psi(n, k)
        return val == _packed_target(n, k)
    if n > 40:
        raise DomainError("congruence checks are supported for n <= 64 (modulus <= 64)")
    from .poly import reduce_mod_2k
    ring = Zmod(2 ** k)
    psi = reduce_mod_2k(legendre_psi(n), k)
    return (psi - _g_power(ring, dd, 2 ** ee)).is_zero()


def _rereduce(p, ring):
    from .poly import _reduce_mod
    return _reduce_mod(_lift_zz(p), ring)


def _lift_zz(p):
    if isinstance(p.ring, PolyRing):
        return UPoly._raw([_lift_zz(c) for c in p.c], _lift_ring(p.ring), p.var)
    return UPoly([int(c) for c in p.c], ZZ, p.var)


def _lift_ring(r):
    if isinstance(r, PolyRing):
        return PolyRing(_lift_ring(r.base), r.var)
    return ZZ


class TropDeg:
    """Upper bounds (deg_lambda, deg_x, total) carried through ring operations."""

    __slots__ = ("lam", "x", "tot")
    NEG = -math.inf

    def __init__(self, lam, x, tot):
        self.lam, self.x, self.tot = lam, x, tot

    @classmethod
    def of(cls, p: UPoly):
        dx, dl, dt = bi_degrees(p)
        if dx < 0:
            return cls(cls.NEG, cls.NEG, cls.NEG)
        return cls(dl, dx, dt)

    def __add__(self, o):
        if isinstance(o, int):
            o = TropDeg(0, 0, 0) if o else TropDeg(self.NEG, self.NEG, self.NEG)
        return TropDeg(max(self.lam, o.lam), max(self.x, o.x), max(self.tot, o.tot))

    __sub__ = __add__
    __radd__ = __add__

    def __mul__(self, o):
        if isinstance(o, int):
            return self if o else TropDeg(self.NEG, self.NEG, self.NEG)
        return TropDeg(self.lam + o.lam, self.x + o.x, self.tot + o.tot)

    __rmul__ = __mul__

    def astuple(self):
        return (self.lam, self.x, self.tot)


@lru_cache(maxsize=None)
def _trop_system():
    four_f, psi3, psi4 = _legendre_seeds()
    return RecurrenceSystem(TropDeg(0, 0, 0), TropDeg.of(four_f), TropDeg.of(psi3), TropDeg.of(psi4),
                            memo_cap=10 ** 6)


def degree_upper_bounds(n: int):
    """(deg_lambda, deg_x, total) upper bounds for psi_n from the recurrence."""
    return _trop_system().h(n).astuple()


def degree_check_legendre(n: int) -> bool:
    """deg_lambda psi_n = d(n) and deg_x psi_n = total degree = 2 d(n).

    The recurrence gives upper bounds; the congruence exhibits the extreme
    monomials lambda^d and x^(2d) with coefficients of 2-adic valuation e(n).
    """
    dd = d(n)
    if n <= 2:
        return legendre_psi(n) == legendre_psi(1)
    if degree_upper_bounds(n) != (dd, 2 * dd, 2 * dd):
        return False
    return congruence_check_legendre(n)


def degree_exact(n: int):
    dx, dl, dt = bi_degrees(legendre_psi(n))
    return dl, dx, dt


def lambda_leading_unit(n: int) -> bool:
    """The lambda-leading coefficient of psi_n is 2^e(n) mod 2^(e(n)+1)."""
    ee, dd = e(n), d(n)
    k = ee + 1
    if n <= _PACK_N and k <= 6:
        val, ctx = _packed_psi(n, k)
        row = (val >> (dd * _PACK_STRIDE * ctx.s)) & ((mpz(1) << (_PACK_STRIDE * ctx.s)) - 1)
        lead = gmpy2.unpack(row, ctx.s)
    else:
        psi = _rereduce(legendre_psi(n), Zmod(2 ** k))
        lead = [cf.coeff(dd) if cf.degree >= dd else 0 for cf in psi.c]
    lead = list(lead) + [0]
    return int(lead[0]) == 2 ** ee and all(int(c) == 0 for c in lead[1:])


# ---------------------------------------------------------------- special values


@lru_cache(maxsize=None)
def _special_systems():
    lamr = PolyRing(ZZ, LAM)
    lam = UPoly((0, 1), ZZ, LAM)
    zero = lamr.zero
    onep = lamr.one
    return {"0": legendre_system_at(lam, zero), "1": legendre_system_at(lam, onep),
            "lambda": legendre_system_at(lam, lam)}


def special_values(n: int):
    s = _special_systems()
    return s["0"].h(n), s["1"].h(n), s["lambda"].h(n)


def special_values_check(n: int) -> bool:
    """psi_n at x = 0, 1, lambda equals a_n lambda^d, a_n (1-lambda)^d, a_n (lambda(lambda-1))^d.

    The last factor is lambda(lambda-1), not lambda(1-lambda): the two differ
    by (-1)^d(n), which is -1 exactly when 4 | n (psi_4 already shows it).
    """
    at0, at1, atl = special_values(n)
    an, dd = a_coeff(n), d(n)
    lam = UPoly((0, 1), ZZ, LAM)
    one_m = UPoly((1, -1), ZZ, LAM)
    lam_m = UPoly((-1, 1), ZZ, LAM)
    return (at0 == (lam ** dd).scale(an) and at1 == (one_m ** dd).scale(an)
            and atl == ((lam * lam_m) ** dd).scale(an))


# ---------------------------------------------------------------- Weierstrass
#
# Psi_n is weighted-homogeneous (x, A, B weights 1, 2, 3), so it is determined by
# its dehomogenisation at x = 1.  We run the recurrence in Z[B][A] with x = 1 and
# carry weights alongside through a separate abstract run.

AV, BV = "A", "B"


def _wring(base=ZZ):
    return PolyRing(PolyRing(base, BV), AV)


def _w_seeds(base=ZZ):
    # dehomogenised at x = 1: A as outer, B as inner
    w = lambda terms: bipoly(terms, AV, BV, base)
    cubic = w({(0, 0): 1, (1, 0): 1, (0, 1): 1})
    four_f = (cubic * cubic).scale(base.coerce(16))
    psi3 = w({(0, 0): 3, (1, 0): 6, (0, 1): 12, (2, 0): -1})
    psi4 = w({(0, 0): 2, (1, 0): 10, (0, 1): 40, (2, 0): -10, (1, 1): -8, (0, 2): -16, (3, 0): -2})
    return four_f, psi3, psi4


_W = {}


def _w_system(base=ZZ):
    if base not in _W:
        four_f, psi3, psi4 = _w_seeds(base)
        _W[base] = RecurrenceSystem(PolyRing(PolyRing(base, BV), AV).one, four_f, psi3, psi4)
    return _W[base]


class Weight:
    """Abstract value: the weight of a weighted-homogeneous element, or None."""

    __slots__ = ("w",)

    def __init__(self, w):
        self.w = w

    def __mul__(self, o):
        if isinstance(o, int):
            return self
        if self.w is None or o.w is None:
            return Weight(None)
        return Weight(self.w + o.w)

    __rmul__ = __mul__

    def __sub__(self, o):
        return Weight(self.w if self.w == o.w else None)

    __add__ = __sub__


def _homog_weight(terms3):
    ws = {i + 2 * j + 3 * k for (i, j, k) in terms3}
    return Weight(ws.pop() if len(ws) == 1 else None)


@lru_cache(maxsize=None)
def _weight_system():
    cubic2 = {(6, 0, 0), (4, 1, 0), (3, 0, 1), (2, 2, 0), (1, 1, 1), (0, 0, 2)}
    psi3 = {(4, 0, 0), (2, 1, 0), (1, 0, 1), (0, 2, 0)}
    psi4 = {(6, 0, 0), (4, 1, 0), (3, 0, 1), (2, 2, 0), (1, 1, 1), (0, 0, 2), (0, 3, 0)}
    return RecurrenceSystem(Weight(0), _homog_weight(cubic2), _homog_weight(psi3), _homog_weight(psi4),
                            memo_cap=10 ** 6)


def weierstrass_weight(n: int):
    """Weight of Psi_n proven by the abstract run, or None if not homogeneous."""
    return _weight_system().h(n).w


def weierstrass_dehom(n: int, base=ZZ) -> UPoly:
    """Psi_n(A, B, 1) as a polynomial in A over base[B]."""
    return _w_system(base).h(n)


class TriPoly:
    """Sparse integer polynomial in (A, B, x) as {(i_A, j_B, k_x): c}."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {k: v for k, v in terms.items() if v}

    def __eq__(self, other):
        return isinstance(other, TriPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self, var):
        idx = {"A": 0, "B": 1, "x": 2}[var]
        return max((k[idx] for k in self.terms), default=-1)

    def weights(self):
        return {2 * i + 3 * j + k for (i, j, k) in self.terms}

    def __call__(self, A, B, x):
        return sum(c * A ** i * B ** j * x ** k for (i, j, k), c in self.terms.items())

    def reduce_mod(self, m):
        return TriPoly({k: v % m for k, v in self.terms.items()})

    def to_str(self):
        def mono(i, j, k):
            parts = []
            for v, ex in (("A", i), ("B", j), ("x", k)):
                if ex == 1:
                    parts.append(v)
                elif ex:
                    parts.append(f"{v}^{ex}")
            return "*".join(parts)

        out = []
        for key in sorted(self.terms, key=lambda t: (-t[2], t[0], t[1])):
            c = self.terms[key]
            m = mono(*key)
            s = f"{c}" if not m else (m if c == 1 else f"-{m}" if c == -1 else f"{c}*{m}")
            out.append(s)
        return " + ".join(out).replace("+ -", "- ") or "0"

    def __repr__(self):
        return f"TriPoly({self.to_str()})"


def _rehom(dehom: UPoly, weight: int) -> dict:
    terms = {}
    for i, cf in enumerate(dehom.c):
        for j, c in enumerate(cf.c):
            if c:
                k = weight - 2 * i - 3 * j
                if k < 0:
                    raise InexactDivision("dehomogenised term exceeds the weight")
                terms[(i, j, k)] = c
    return terms


def weierstrass_psi(n: int) -> TriPoly:
    """Psi_n(A, B, x) over Z, rebuilt from its dehomogenisation."""
    w = weierstrass_weight(n)
    if w is None:
        raise InexactDivision("weighted homogeneity failed")
    return TriPoly({k: int(v) for k, v in _rehom(weierstrass_dehom(n), w).items()})


@lru_cache(maxsize=None)
def _w_mod64():
    return _w_system(Zmod(64))


def congruence_check_weierstrass(n: int) -> bool:
    """Psi_n == 2^e(n) (A - x^2)^d(n) mod 2^(e(n)+1).

    Both sides are weighted-homogeneous of weight 2 d(n), so it suffices to
    compare dehomogenisations at x = 1.
    """
    ee, dd = e(n), d(n)
    if weierstrass_weight(n) != 2 * dd:
        return False
    k = ee + 1
    ring = Zmod(2 ** k)
    if k <= 6:
        lhs = _rereduce(_w_mod64().h(n), ring)
    else:
        lhs = _rereduce(weierstrass_dehom(n), ring)
    g = bipoly({(1, 0): 1, (0, 0): -1}, AV, BV, ring)
    target = (g ** dd).scale(ring.coerce(2 ** ee)) if dd else bipoly({(0, 0): 2 ** ee}, AV, BV, ring)
    return (lhs - target).is_zero()


def weierstrass_homogeneity_check(n: int) -> bool:
    return weierstrass_weight(n) == 2 * d(n)


def weierstrass_degree_check(n: int) -> bool:
    """deg_A Psi_n = d(n): the weight caps it and the mod 2^(e+1) image attains it."""
    if not weierstrass_homogeneity_check(n):
        return False
    k = e(n) + 1
    red = _rereduce(_w_mod64().h(n), Zmod(2 ** k)) if k <= 6 else \
        _rereduce(weierstrass_dehom(n), Zmod(2 ** k))
    return red.degree == d(n)


def weierstrass_system_at(A, B, x) -> RecurrenceSystem:
    x2 = x * x
    cubic = x2 * x + A * x + B
    four_f = 16 * (cubic * cubic)
    h3 = 3 * x2 * x2 + 6 * A * x2 + 12 * B * x - A * A
    h4 = 2 * (x2 * x2 * x2 + 5 * A * x2 * x2 + 20 * B * x2 * x - 5 * A * A * x2 - 4 * A * B * x
              - (8 * B * B + A * A * A))
    return RecurrenceSystem(x * 0 + 1, four_f, h3, h4)


def weierstrass_psi_eval(n: int, A, B, x):
    if isinstance(x, int):
        A, B, x = mpq(A), mpq(B), mpq(x)
    return weierstrass_system_at(A, B, x).h(n)


# ---------------------------------------------------------------- Lattes map


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Infinity"

    def __str__(self):
        return "inf"


Infinity = _Infinity()


def lattes(lam, x):
    """x-coordinate of 2P given x(P) on the Legendre curve."""
    if lam == 0 or lam == 1:
        raise DomainError("lambda must not be 0 or 1")
    num = (x * x - lam) * (x * x - lam)
    den = 4 * x * (x - 1) * (x - lam)
    if den == 0:
        if num == 0:
            raise DomainError("0/0 in the Lattes map")
        return Infinity
    return num / den if not isinstance(num, int) else mpq(num, den)


__all__ = ["d", "e", "delta", "a_coeff", "DegreeData", "RecurrenceSystem", "legendre_psi",
           "legendre_psi_eval", "psi_tilde", "congruence_check_legendre", "special_values_check",
           "degree_check_legendre", "degree_upper_bounds", "lambda_leading_unit", "weierstrass_psi",
           "weierstrass_dehom", "weierstrass_weight", "congruence_check_weierstrass",
           "weierstrass_homogeneity_check", "weierstrass_degree_check", "congruence_mod", "TriPoly", "weierstrass_psi_eval", "weierstrass_system_at", "lattes", "Infinity", "eval_outer"]
