"""Dense univariate polynomials over exact rings, nested for two variables.

Coefficient rings are small descriptor objects (``ZZ``, ``QQ``, ``Zmod(m)``,
``PolyRing(base, var)`` and quotient rings from :mod:`legtors.quotring`).
Elements are plain ``mpz``/``mpq`` values, ``FieldElem`` or ``UPoly``, so the
usual Python operators work on coefficients.  Large integer products go
through Kronecker substitution packed into a single ``mpz``.
"""

from __future__ import annotations

import random
import re
from functools import reduce as _fold
import gmpy2
from gmpy2 import mpq, mpz

from .errors import (DivisionByZero, InexactDivision, ParseError, RingMismatch,
                     ZeroDivisorFound)

# ---------------------------------------------------------------- rings


class Ring:
    is_field = False
    needs_norm = False
    integral = True

    def is_zero(self, x):
        return x == 0

    def norm(self, x):
        return x

    def norm_list(self, xs):
        return xs


class IntegerRing(Ring):
    name = "ZZ"
    zero = mpz(0)
    one = mpz(1)

    def coerce(self, x):
        if isinstance(x, UPoly):
            raise RingMismatch("polynomial is not an integer")
        q = mpq(x)
        if q.denominator != 1:
            raise RingMismatch(f"{x} is not an integer")
        return q.numerator

    def exact_div(self, a, b):
        if b == 0:
            raise DivisionByZero("integer division by zero")
        q, r = gmpy2.f_divmod(a, b)
        if r:
            raise InexactDivision(f"{a} is not divisible by {b}")
        return q

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")

    def __repr__(self):
        return "ZZ"


class RationalField(Ring):
    name = "QQ"
    is_field = True
    zero = mpq(0)
    one = mpq(1)

    def coerce(self, x):
        if isinstance(x, UPoly):
            raise RingMismatch("polynomial is not a rational")
        return mpq(x)

    def inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / mpq(x)

    def exact_div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero")
        return mpq(a) / b

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class Zmod(Ring):
    """Residues mod m, stored as ``mpz`` in ``[0, m)``."""

    needs_norm = True

    def __init__(self, m):
        self.m = mpz(m)
        if self.m < 2:
            raise ValueError("modulus must be at least 2")
        self.is_field = bool(gmpy2.is_prime(self.m))
        self.integral = self.is_field
        self.zero = mpz(0)
        self.one = mpz(1)

    def norm(self, x):
        return x % self.m

    def norm_list(self, xs):
        m = self.m
        return [x % m for x in xs]

    def coerce(self, x):
        if isinstance(x, UPoly):
            raise RingMismatch("polynomial is not a residue")
        q = mpq(x)
        if q.denominator == 1:
            return q.numerator % self.m
        return q.numerator * self.inv(q.denominator % self.m) % self.m

    def inv(self, x):
        x = mpz(x) % self.m
        if x == 0:
            raise DivisionByZero("inverse of zero")
        g = gmpy2.gcd(x, self.m)
        if g != 1:
            raise ZeroDivisorFound(g)
        return gmpy2.invert(x, self.m)

    def exact_div(self, a, b):
        return a * self.inv(b) % self.m

    def __eq__(self, other):
        return isinstance(other, Zmod) and other.m == self.m

    def __hash__(self):
        return hash(("Zmod", int(self.m)))

    def __repr__(self):
        return f"Zmod({self.m})"


class PolyRing(Ring):
    """Univariate polynomials over ``base`` in ``var``; used for nesting."""

    def __init__(self, base, var):
        self.base = base
        self.var = var
        self.integral = base.integral
        self.zero = UPoly((), base, var)
        self.one = UPoly((base.one,), base, var)

    def is_zero(self, x):
        return not x.c

    def coerce(self, x):
        if isinstance(x, UPoly):
            if x.ring == self.base and x.var == self.var:
                return x
            raise RingMismatch(f"{x.ring}[{x.var}] is not {self.base}[{self.var}]")
        return UPoly((self.base.coerce(x),), self.base, self.var)

    def exact_div(self, a, b):
        return a.exact_quo(b)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.base == self.base and other.var == self.var

    def __hash__(self):
        return hash(("Poly", self.base, self.var))

    def __repr__(self):
        return f"{self.base!r}[{self.var}]"


ZZ = IntegerRing()
QQ = RationalField()


def _int_backed(ring):
    """Depth of nesting over ZZ/Zmod, or None when Kronecker packing does not apply."""
    depth = 0
    while isinstance(ring, PolyRing):
        ring = ring.base
        depth += 1
    if isinstance(ring, (IntegerRing, Zmod)):
        return depth
    return None


def _base_ring(ring):
    while isinstance(ring, PolyRing):
        ring = ring.base
    return ring


# ---------------------------------------------------------------- Kronecker


_SCHOOL_CUTOFF = 12


def _school_mul(a, b, zero=0):
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack_signed(xs, s):
    if all(x >= 0 for x in xs):
        return gmpy2.pack(xs, s)
    pos = [x if x > 0 else 0 for x in xs]
    neg = [-x if x < 0 else 0 for x in xs]
    return gmpy2.pack(pos, s) - gmpy2.pack(neg, s)


def _unpack_signed(v, s, n):
    """Balanced-digit unpacking of ``v`` into ``n`` slots of ``s`` bits."""
    half = mpz(1) << (s - 1)
    offset = gmpy2.pack([half] * n, s)
    digits = gmpy2.unpack(v + offset, s)
    digits = digits[:n] + [mpz(0)] * (n - len(digits))
    return [d - half for d in digits]


def kron_mul(a, b):
    """Product of two integer coefficient lists."""
    if not a or not b:
        return []
    if min(len(a), len(b)) < _SCHOOL_CUTOFF:
        return _school_mul(a, b)
    ba = max(abs(x) for x in a).bit_length()
    bb = max(abs(x) for x in b).bit_length()
    if ba == 0 or bb == 0:
        return [mpz(0)] * (len(a) + len(b) - 1)
    signed = any(x < 0 for x in a) or any(x < 0 for x in b)
    s = ba + bb + min(len(a), len(b)).bit_length() + 2
    n = len(a) + len(b) - 1
    prod = _pack_signed(a, s) * _pack_signed(b, s)
    if not signed:
        out = gmpy2.unpack(prod, s)
        return out[:n] + [mpz(0)] * (n - len(out))
    return _unpack_signed(prod, s, n)


def _dims(p, depth):
    dims = [0] * (depth + 1)

    def walk(q, d):
        dims[d] = max(dims[d], len(q.c))
        if d < depth:
            for x in q.c:
                walk(x, d + 1)

    walk(p, 0)
    return dims


def _to_flat(p, depth, strides, size):
    out = [0] * size

    def walk(q, d, off):
        st = strides[d]
        if d == depth:
            for i, x in enumerate(q.c):
                out[off + i * st] = x
        else:
            for i, x in enumerate(q.c):
                walk(x, d + 1, off + i * st)

    walk(p, 0, 0)
    return out


def _from_flat(flat, depth, dims, strides, rings, var_names):
    def build(d, off):
        n = dims[d]
        st = strides[d]
        if d == depth:
            return UPoly._raw(rings[d].norm_list(flat[off:off + n * st:st]) if rings[d].needs_norm
                              else flat[off:off + n * st:st], rings[d], var_names[d])
        return UPoly._raw([build(d + 1, off + i * st) for i in range(n)], rings[d], var_names[d])

    return build(0, 0)


def _ring_chain(p, depth):
    rings, names = [], []
    ring = p.ring
    rings.append(ring)
    names.append(p.var)
    for _ in range(depth):
        names.append(ring.var)
        ring = ring.base
        rings.append(ring)
    return rings, names


def _strides(dims):
    strides = [1] * len(dims)
    for d in range(len(dims) - 2, -1, -1):
        strides[d] = strides[d + 1] * dims[d + 1]
    return strides


def _nested_kron_mul(p, q, depth):
    dp, dq = _dims(p, depth), _dims(q, depth)
    dims = [x + y - 1 for x, y in zip(dp, dq)]
    strides = _strides(dims)
    fp = _to_flat(p, depth, strides, dp[0] * strides[0])
    fq = _to_flat(q, depth, strides, dq[0] * strides[0])
    prod = kron_mul(fp, fq)
    total = dims[0] * strides[0]
    prod = prod + [0] * (total - len(prod))
    rings, names = _ring_chain(p, depth)
    return _from_flat(prod, depth, dims, strides, rings, names)


def _nested_kron_divexact(p, q, depth):
    """Exact quotient via integer division of packed values; None if that fails."""
    dp, dq = _dims(p, depth), _dims(q, depth)
    dims = dp[:]
    if any(a < b for a, b in zip(dp, dq)):
        return None
    strides = _strides(dims)
    size = dp[0] * strides[0]
    fp = _to_flat(p, depth, strides, size)
    fq = _to_flat(q, depth, strides, dq[0] * strides[0])
    bp = max(abs(x) for x in fp).bit_length()
    rings, names = _ring_chain(p, depth)
    s = bp + size.bit_length() + 34
    for _ in range(3):
        vp = _pack_signed(fp, s)
        vq = _pack_signed(fq, s)
        quo, rem = gmpy2.f_divmod(vp, vq)
        if rem:
            return None
        nq = (dims[0] - dq[0] + 1) * strides[0]
        try:
            digits = _unpack_signed(quo, s, nq + 2)
        except ValueError:
            digits = None
        if digits is not None and not any(digits[nq:]):
            ndims = [dims[0] - dq[0] + 1] + dims[1:]
            cand = _from_flat(digits[:nq], depth, ndims, strides, rings, names)
            if cand * q == p:
                return cand
        s *= 2
    return None


# ---------------------------------------------------------------- UPoly


class UPoly:
    """Immutable dense polynomial, coefficients lowest degree first."""

    __slots__ = ("c", "ring", "var", "_hash")

    def __init__(self, coeffs, ring=QQ, var="x"):
        cs = [ring.coerce(x) for x in coeffs]
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        self.c = tuple(cs)
        self.ring = ring
        self.var = var
        self._hash = None

    @classmethod
    def _raw(cls, coeffs, ring, var):
        obj = object.__new__(cls)
        cs = list(coeffs)
        iz = ring.is_zero
        while cs and iz(cs[-1]):
            cs.pop()
        obj.c = tuple(cs)
        obj.ring = ring
        obj.var = var
        obj._hash = None
        return obj

    # basic data
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    @property
    def lc(self):
        return self.c[-1] if self.c else self.ring.zero

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.ring.zero

    def __len__(self):
        return len(self.c)

    def __iter__(self):
        return iter(self.c)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.ring == other.ring and self.c == other.c
        try:
            return self == self._lift(other)
        except (RingMismatch, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.var, self.c))
        return self._hash

    def __bool__(self):
        return bool(self.c)

    def _lift(self, other):
        if isinstance(other, UPoly) and other.ring == self.ring and other.var == self.var:
            return other
        if isinstance(other, UPoly) and other.ring == self.ring:
            raise RingMismatch(f"variables {self.var} and {other.var} differ")
        if isinstance(other, UPoly) and not isinstance(self.ring, PolyRing):
            raise RingMismatch(f"{self.ring}[{self.var}] vs {other.ring}[{other.var}]")
        return UPoly._raw((self.ring.coerce(other),), self.ring, self.var)

    def _check(self, other):
        if not isinstance(other, UPoly):
            return self._lift(other)
        if other.ring != self.ring or other.var != self.var:
            if isinstance(self.ring, PolyRing) and other.ring == self.ring.base \
                    and other.var == self.ring.var:
                return self._lift(other)
            raise RingMismatch(f"{self.ring}[{self.var}] vs {other.ring}[{other.var}]")
        return other

    # arithmetic
    def __add__(self, other):
        other = self._check(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        if self.ring.needs_norm:
            out = self.ring.norm_list(out)
        return UPoly._raw(out, self.ring, self.var)

    __radd__ = __add__

    def __neg__(self):
        out = [-x for x in self.c]
        if self.ring.needs_norm:
            out = self.ring.norm_list(out)
        return UPoly._raw(out, self.ring, self.var)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return self.scale(self.ring.coerce(other))
        if other.ring != self.ring or other.var != self.var:
            if isinstance(self.ring, PolyRing) and other.ring == self.ring.base \
                    and other.var == self.ring.var:
                return self.scale(other)
            raise RingMismatch(f"{self.ring}[{self.var}] vs {other.ring}[{other.var}]")
        if not self.c or not other.c:
            return UPoly._raw((), self.ring, self.var)
        n = min(len(self.c), len(other.c))
        depth = _int_backed(self.ring)
        if depth is not None and n >= (_SCHOOL_CUTOFF if depth == 0 else 2):
            if depth == 0:
                out = kron_mul(list(self.c), list(other.c))
                if self.ring.needs_norm:
                    out = self.ring.norm_list(out)
                return UPoly._raw(out, self.ring, self.var)
            return _nested_kron_mul(self, other, depth)
        if isinstance(self.ring, RationalField) and n >= _SCHOOL_CUTOFF:
            da = _fold(gmpy2.lcm, (x.denominator for x in self.c), mpz(1))
            db = _fold(gmpy2.lcm, (x.denominator for x in other.c), mpz(1))
            ia = [(x * da).numerator for x in self.c]
            ib = [(x * db).numerator for x in other.c]
            den = da * db
            return UPoly._raw([mpq(x, den) for x in kron_mul(ia, ib)], self.ring, self.var)
        out = _school_mul(self.c, other.c, self.ring.zero)
        if self.ring.needs_norm:
            out = self.ring.norm_list(out)
        return UPoly._raw(out, self.ring, self.var)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, s):
        out = [x * s for x in self.c]
        if self.ring.needs_norm:
            out = self.ring.norm_list(out)
        return UPoly._raw(out, self.ring, self.var)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = UPoly._raw((self.ring.one,), self.ring, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int):
        """Multiply by var**k."""
        if not self.c:
            return self
        return UPoly._raw([self.ring.zero] * k + list(self.c), self.ring, self.var)

    # evaluation and calculus
    def __call__(self, x):
        if not self.c:
            return self.ring.zero
        it = reversed(self.c)
        acc = next(it)
        if self.ring.needs_norm:
            norm = self.ring.norm
            for cf in it:
                acc = norm(acc * x + cf)
            return norm(acc)
        for cf in it:
            acc = acc * x + cf
        return acc

    def derivative(self):
        out = [self.c[i] * i for i in range(1, len(self.c))]
        if self.ring.needs_norm:
            out = self.ring.norm_list(out)
        return UPoly._raw(out, self.ring, self.var)

    def map_coeffs(self, fn, ring, var=None):
        return UPoly._raw([fn(x) for x in self.c], ring, var or self.var)

    def change_ring(self, ring):
        return UPoly([x for x in self.c], ring, self.var) if not isinstance(ring, PolyRing) \
            else self.map_coeffs(ring.coerce, ring)

    def monic(self):
        if not self.c:
            return self
        inv = self.ring.inv(self.lc)
        return self.scale(inv)

    # division
    def divrem(self, other):
        """Long division; over non-fields the leading coefficient must divide."""
        other = self._check(other)
        if not other.c:
            raise DivisionByZero("polynomial division by zero")
        ring = self.ring
        r = list(self.c)
        dq = len(other.c) - 1
        if len(r) - 1 < dq:
            return UPoly._raw((), ring, self.var), self
        lc = other.c[-1]
        inv = ring.inv(lc) if ring.is_field else None
        q = [ring.zero] * (len(r) - dq)
        for k in range(len(r) - 1 - dq, -1, -1):
            top = r[k + dq]
            if ring.is_zero(top):
                continue
            f = top * inv if inv is not None else ring.exact_div(top, lc)
            if ring.needs_norm:
                f = ring.norm(f)
            q[k] = f
            for j, y in enumerate(other.c):
                r[k + j] = r[k + j] - f * y
            if ring.needs_norm:
                for j in range(dq + 1):
                    r[k + j] = ring.norm(r[k + j])
        return UPoly._raw(q, ring, self.var), UPoly._raw(r[:dq], ring, self.var)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def exact_quo(self, other):
        other = self._check(other)
        if not self.c:
            return self
        depth = _int_backed(self.ring)
        if depth is not None and isinstance(_base_ring(self.ring), IntegerRing) \
                and len(self.c) > 4:
            res = _nested_kron_divexact(self, other, depth)
            if res is not None:
                return res
        try:
            q, r = self.divrem(other)
        except InexactDivision as exc:
            raise InexactDivision(f"{other} does not divide {self}") from exc
        if r.c:
            raise InexactDivision(f"{other} does not divide {self}")
        return q

    def divrem_exact(self, other, exact=True):
        q, r = self.divrem(other)
        if exact and r.c:
            raise InexactDivision("nonzero remainder")
        return q, r

    # display
    def __repr__(self):
        return f"UPoly({self.to_str()!r}, {self.ring!r})"

    def to_str(self):
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            cf = self.c[i]
            if self.ring.is_zero(cf):
                continue
            mon = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            s = cf.to_str() if isinstance(cf, UPoly) else str(cf)
            if isinstance(cf, UPoly) and len([x for x in cf.c if not cf.ring.is_zero(x)]) > 1:
                s = f"({s})"
            if mon:
                term = mon if s == "1" else (f"-{mon}" if s == "-1" else f"{s}*{mon}")
            else:
                term = s
            parts.append(term)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    __str__ = to_str


def poly(coeffs, ring=QQ, var="x") -> UPoly:
    return UPoly(coeffs, ring, var)


def zero(ring=QQ, var="x"):
    return UPoly((), ring, var)


def one(ring=QQ, var="x"):
    return UPoly((ring.one,), ring, var)


def gen(ring=QQ, var="x"):
    return UPoly((ring.zero, ring.one), ring, var)


# ---------------------------------------------------------------- gcd


def gcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic gcd over a field by Euclidean remainders."""
    if p.ring != q.ring:
        raise RingMismatch("gcd of polynomials over different rings")
    if not p.ring.is_field:
        raise TypeError("gcd requires coefficients in a field")
    if not p.c and not q.c:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p, q
    while b.c:
        a, b = b, a.divrem(b)[1]
        if b.c:
            b = b.monic()
    return a.monic()


def xgcd(p: UPoly, q: UPoly):
    """Extended gcd over a field: (g, s, t) with s*p + t*q = g monic."""
    ring = p.ring
    r0, r1 = p, q
    s0, s1 = one(ring, p.var), zero(ring, p.var)
    t0, t1 = zero(ring, p.var), one(ring, p.var)
    while r1.c:
        quo, rem = r0.divrem(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if not r0.c:
        return r0, s0, t0
    inv = ring.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def content_zz(p: UPoly):
    return _fold(gmpy2.gcd, p.c, mpz(0))


def primitive_zz(p: UPoly) -> UPoly:
    """Primitive integer polynomial with positive leading coefficient."""
    if not p.c:
        return p
    if isinstance(p.ring, RationalField):
        den = _fold(gmpy2.lcm, (x.denominator for x in p.c), mpz(1))
        p = UPoly._raw([(x * den).numerator for x in p.c], ZZ, p.var)
    g = content_zz(p)
    if p.lc < 0:
        g = -g
    return UPoly._raw([x // g for x in p.c], ZZ, p.var)


def pseudo_rem(a: UPoly, b: UPoly) -> UPoly:
    """lc(b)^(deg a - deg b + 1) * a mod b, without divisions."""
    ring = a.ring
    if not b.c:
        raise DivisionByZero("pseudo-remainder by zero")
    db = b.degree
    r = list(a.c)
    if len(r) - 1 < db:
        return a
    lc = b.c[-1]
    e = len(r) - 1 - db + 1
    for k in range(len(r) - 1 - db, -1, -1):
        top = r[k + db]
        r = [x * lc for x in r]
        for j, y in enumerate(b.c):
            r[k + j] = r[k + j] - top * y
        if ring.needs_norm:
            r = ring.norm_list(r)
        r.pop()
        e -= 1
    return UPoly._raw(r, ring, a.var)


def subresultant_prs(a: UPoly, b: UPoly):
    """Subresultant remainder sequence over an integral domain (deg a >= deg b)."""
    ring = a.ring
    seq = [a, b]
    if not b.c:
        return seq
    g = ring.one
    h = ring.one
    while True:
        delta = a.degree - b.degree
        r = pseudo_rem(a, b)
        if not r.c:
            return seq
        den = g * _rpow(ring, h, delta)
        r = UPoly._raw([ring.exact_div(x, den) for x in r.c], ring, a.var)
        seq.append(r)
        a, b = b, r
        g = a.lc
        if delta == 0:
            h = h
        elif delta == 1:
            h = g
        else:
            h = ring.exact_div(_rpow(ring, g, delta), _rpow(ring, h, delta - 1))
        if b.degree == 0:
            return seq


def _rpow(ring, x, e):
    out = ring.one
    for _ in range(e):
        out = out * x
    return out


def gcd_subresultant_zz(p: UPoly, q: UPoly) -> UPoly:
    """Primitive integer gcd via the subresultant sequence."""
    p, q = primitive_zz(p), primitive_zz(q)
    if not p.c:
        return q
    if not q.c:
        return p
    cg = gmpy2.gcd(content_zz(p), content_zz(q))
    if p.degree < q.degree:
        p, q = q, p
    seq = subresultant_prs(p, q)
    last = seq[-1]
    if last.degree == 0:
        g = UPoly._raw((mpz(1),), ZZ, p.var)
    else:
        g = primitive_zz(last)
    return g.scale(cg) if cg != 1 else g


def resultant(p: UPoly, q: UPoly):
    """Resultant over an integral domain by the subresultant algorithm."""
    if p.ring != q.ring:
        raise RingMismatch("resultant of polynomials over different rings")
    ring = p.ring
    if not p.c or not q.c:
        return ring.zero
    if ring.is_field and not isinstance(ring, (RationalField, Zmod)):
        return _resultant_euclid(p, q)
    s = 1
    a, b = p, q
    if a.degree < b.degree:
        a, b = b, a
        if (a.degree * b.degree) % 2:
            s = -1
    if b.degree == 0:
        res = _rpow(ring, b.lc, a.degree)
        return res if s == 1 else -res
    g = ring.one
    h = ring.one
    while True:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            s = -s
        r = pseudo_rem(a, b)
        a = b
        if not r.c:
            return ring.zero
        den = g * _rpow(ring, h, delta)
        b = UPoly._raw([ring.exact_div(x, den) for x in r.c], ring, a.var)
        g = a.lc
        if delta == 1:
            h = g
        elif delta > 1:
            h = ring.exact_div(_rpow(ring, g, delta), _rpow(ring, h, delta - 1))
        if b.degree == 0:
            da = a.degree
            if da == 0:
                res = ring.one
            elif da == 1:
                res = b.lc
            else:
                res = ring.exact_div(_rpow(ring, b.lc, da), _rpow(ring, h, da - 1))
            res = ring.norm(res) if ring.needs_norm else res
            return res if s == 1 else (ring.norm(-res) if ring.needs_norm else -res)


def _resultant_euclid(p: UPoly, q: UPoly):
    """Field resultant through the Euclidean remainder sequence."""
    ring = p.ring
    res = ring.one
    a, b = p, q
    while True:
        if b.degree == 0:
            return res * _rpow(ring, b.lc, a.degree)
        r = a.divrem(b)[1]
        if not r.c:
            return ring.zero
        if (a.degree * b.degree) % 2:
            res = -res
        res = res * _rpow(ring, b.lc, a.degree - r.degree)
        a, b = b, r


def sylvester_matrix(p: UPoly, q: UPoly):
    m, n = p.degree, q.degree
    zero_ = p.ring.zero
    rows = []
    for i in range(n):
        rows.append([zero_] * i + list(reversed(p.c)) + [zero_] * (n - 1 - i))
    for i in range(m):
        rows.append([zero_] * i + list(reversed(q.c)) + [zero_] * (m - 1 - i))
    return rows


def det(rows, ring):
    """Determinant by cofactor expansion (small matrices only)."""
    n = len(rows)
    if n == 0:
        return ring.one
    if n == 1:
        return rows[0][0]
    total = ring.zero
    for j in range(n):
        x = rows[0][j]
        if ring.is_zero(x):
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = x * det(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def resultant_sylvester(p: UPoly, q: UPoly):
    if p.degree + q.degree > 8:
        raise ValueError("Sylvester oracle is limited to degree <= 4 inputs")
    if p.degree == 0 and q.degree == 0:
        return p.ring.one
    return det(sylvester_matrix(p, q), p.ring)


# ---------------------------------------------------------------- bivariate


def bipoly(terms, outer="x", inner="y", ring=ZZ) -> UPoly:
    """Build a polynomial in ``outer`` over ``ring[inner]`` from {(i, j): c}."""
    inner_ring = PolyRing(ring, inner)
    if not terms:
        return UPoly._raw((), inner_ring, outer)
    deg_o = max(i for i, _ in terms)
    rows = [dict() for _ in range(deg_o + 1)]
    for (i, j), c in terms.items():
        rows[i][j] = rows[i].get(j, 0) + c
    coeffs = []
    for row in rows:
        if row:
            dj = max(row)
            coeffs.append(UPoly([row.get(j, 0) for j in range(dj + 1)], ring, inner))
        else:
            coeffs.append(inner_ring.zero)
    return UPoly._raw(coeffs, inner_ring, outer)


def bi_terms(p: UPoly) -> dict:
    out = {}
    for i, cf in enumerate(p.c):
        for j, x in enumerate(cf.c):
            if not cf.ring.is_zero(x):
                out[(i, j)] = x
    return out


def transpose(p: UPoly) -> UPoly:
    inner_ring = p.ring
    terms = {(j, i): c for (i, j), c in bi_terms(p).items()}
    return bipoly(terms, inner_ring.var, p.var, inner_ring.base)


def bi_degrees(p: UPoly):
    """(deg in outer, deg in inner, total degree); -1 entries for zero."""
    terms = bi_terms(p)
    if not terms:
        return (-1, -1, -1)
    return (max(i for i, _ in terms), max(j for _, j in terms), max(i + j for i, j in terms))


def eval_inner(p: UPoly, value, ring=None) -> UPoly:
    """Substitute the inner variable; result is univariate in the outer one."""
    vals = [cf(value) for cf in p.c]
    if ring is None:
        ring = _guess_ring(vals, p.ring.base)
    return UPoly(vals, ring, p.var)


def eval_outer(p: UPoly, value) -> UPoly:
    """Substitute the outer variable; result is univariate in the inner one."""
    acc = p.ring.zero
    for cf in reversed(p.c):
        acc = acc * value + cf
    return acc


def eval_outer_in(p: UPoly, value, ring) -> UPoly:
    """Substitute outer := value where value lives in ``ring``; coefficients map into ring."""
    out = UPoly((), ring, p.ring.var)
    for cf in reversed(p.c):
        out = out.scale(value) + UPoly([ring.coerce(x) for x in cf.c], ring, p.ring.var)
    return out


def _guess_ring(vals, default):
    for v in vals:
        if isinstance(v, UPoly):
            return PolyRing(v.ring, v.var)
        par = getattr(v, "parent", None)
        if par is not None:
            return par
        if isinstance(v, type(mpq(0))) and not isinstance(default, Zmod):
            return QQ
    return default


def reduce_mod_2k(p: UPoly, k: int) -> UPoly:
    """Coefficientwise reduction of an integer (nested) polynomial mod 2^k."""
    return _reduce_mod(p, Zmod(mpz(2) ** k))


def _reduce_mod(p, ring):
    if isinstance(p.ring, PolyRing):
        inner = _reduce_mod_ring(p.ring, ring)
        return UPoly._raw([_reduce_mod(x, ring) for x in p.c], inner, p.var)
    return UPoly._raw([ring.coerce(x) for x in p.c], ring, p.var)


def _reduce_mod_ring(pr, ring):
    if isinstance(pr, PolyRing):
        return PolyRing(_reduce_mod_ring(pr.base, ring), pr.var)
    return ring


# ---------------------------------------------------------------- squarefree


def squarefree_univariate(p: UPoly) -> bool:
    if p.degree <= 0:
        return True
    if isinstance(p.ring, IntegerRing):
        p = p.change_ring(QQ)
    return gcd(p, p.derivative()).degree == 0


def _to_qq_bi(p: UPoly) -> UPoly:
    if isinstance(p.ring.base, RationalField):
        return p
    inner = PolyRing(QQ, p.ring.var)
    return UPoly._raw([UPoly._raw([mpq(x) for x in cf.c], QQ, cf.var) for cf in p.c], inner, p.var)


def _to_zz_bi(p: UPoly) -> UPoly:
    terms = bi_terms(p)
    den = _fold(gmpy2.lcm, (mpq(c).denominator for c in terms.values()), mpz(1))
    return bipoly({k: (mpq(c) * den).numerator for k, c in terms.items()},
                  p.var, p.ring.var, ZZ)


_CERT_PRIME = mpz(2) ** 61 - 1


def squarefree_bivariate(p: UPoly, tries: int = 12) -> bool:
    """True iff p in Q[outer, inner] has no repeated nonconstant factor.

    The content in the inner variable is tested as a univariate.  The
    primitive part is certified by a specialization of the inner variable that
    keeps the outer degree and is squarefree modulo a large prime; if no
    certificate is found the exact derivative gcd decides.
    """
    if not p.c:
        raise ValueError("zero polynomial")
    pq = _to_qq_bi(p)
    cont = _fold(gcd, [cf for cf in pq.c if cf.c])
    if not squarefree_univariate(cont):
        return False
    pp = UPoly._raw([cf.exact_quo(cont) for cf in pq.c], pq.ring, pq.var)
    if pp.degree <= 0:
        return True
    pz = _to_zz_bi(pp)
    mod = Zmod(_CERT_PRIME)
    deg = pz.degree
    for b0 in _spec_points(tries):
        lcv = pz.lc(b0)
        if lcv % _CERT_PRIME == 0:
            continue
        spec = UPoly._raw([mod.coerce(cf(b0)) for cf in pz.c], mod, pz.var)
        if spec.degree != deg:
            continue
        if gcd(spec, spec.derivative()).degree == 0:
            return True
    # exact fallback: subresultant sequence of pp and d/d(outer) pp over ZZ[inner]
    d = pz.derivative()
    if not d.c:
        return True
    last = subresultant_prs(pz, d)[-1]
    return last.degree == 0


def _spec_points(n):
    yield mpz(0)
    k = 1
    while k <= n:
        yield mpz(k)
        yield mpz(-k)
        k += 1


# ---------------------------------------------------------------- rational roots


def _small_primes(start=3):
    p = mpz(start - 1)
    while True:
        p = gmpy2.next_prime(p)
        yield p


def _ratrecon(r, m, nbound, dbound):
    """Rational reconstruction of r mod m with |num| <= nbound, 0 < den <= dbound."""
    r0, r1 = m, r % m
    t0, t1 = mpz(0), mpz(1)
    while r1 > nbound:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        t0, t1 = t1, t0 - qq * t1
    if t1 == 0 or abs(t1) > dbound:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if gmpy2.gcd(r1, t1) != 1:
        return None
    return mpq(r1, t1)


def rational_roots(p: UPoly) -> dict:
    """All rational roots with multiplicities, found p-adically and verified exactly."""
    if not p.c:
        raise ValueError("zero polynomial")
    if isinstance(p.ring, IntegerRing):
        p = p.change_ring(QQ)
    if not isinstance(p.ring, RationalField):
        raise TypeError("rational_roots expects a polynomial over QQ or ZZ")
    roots = {}
    f = p
    k = 0
    while f.c and f.c[0] == 0:
        f = UPoly._raw(f.c[1:], f.ring, f.var)
        k += 1
    if k:
        roots[mpq(0)] = k
    if f.degree <= 0:
        return roots
    g = f
    if f.degree > 1:
        g = f.divrem(gcd(f, f.derivative()))[0]
    gz = primitive_zz(g)
    if gz.degree == 1:
        cands = [mpq(-gz.c[0], gz.c[1])]
    else:
        cands = _padic_roots(gz)
    for r in cands:
        if gz(r) != 0:
            continue
        mult = 0
        lin = UPoly._raw((-r, mpq(1)), QQ, p.var)
        while True:
            q, rem = f.divrem(lin)
            if rem.c:
                break
            f = q
            mult += 1
        roots[r] = mult
    return dict(sorted(roots.items()))


def _padic_roots(gz: UPoly):
    lc, c0 = abs(gz.lc), abs(gz.c[0])
    deriv = gz.derivative()
    for prime in _small_primes(3):
        if lc % prime == 0:
            continue
        fp = Zmod(prime)
        gp = UPoly._raw(fp.norm_list(list(gz.c)), fp, gz.var)
        if gp.degree != gz.degree:
            continue
        if gcd(gp, gp.derivative()).degree != 0:
            continue
        break
    roots_p = [x for x in range(int(prime)) if gp(mpz(x)) == 0] if prime < 5000 \
        else _roots_mod_p(gp)
    bound = 2 * c0 * lc + 1
    out = []
    for r in roots_p:
        r = mpz(r)
        m = mpz(prime)
        while m <= bound:
            m2 = m * m
            fr = gz(r) % m2
            dr = deriv(r) % m2
            r = (r - fr * gmpy2.invert(dr, m2)) % m2
            m = m2
        cand = _ratrecon(r, m, c0, lc)
        if cand is not None:
            out.append(cand)
    return out


def _roots_mod_p(gp: UPoly):
    """Roots in F_p by splitting gcd(g, x^p - x) with random shifts."""
    ring = gp.ring
    prime = ring.m
    x = gen(ring, gp.var)
    xp = _powmod(x, prime, gp)
    h = gcd(gp, xp - x)
    rng = random.Random(1)
    out = []

    def split(f):
        if f.degree == 0:
            return
        if f.degree == 1:
            out.append(int((-f.c[0] * ring.inv(f.c[1])) % prime))
            return
        while True:
            a = rng.randrange(prime)
            w = _powmod(x + a, (prime - 1) // 2, f) - 1
            g = gcd(f, w) if w.c else f
            if 0 < g.degree < f.degree:
                split(g)
                split(f.divrem(g)[0])
                return

    if h.degree > 0:
        split(h)
    return sorted(out)


def _powmod(base, e, modulus):
    result = one(base.ring, base.var)
    b = base.divrem(modulus)[1]
    while e:
        if e & 1:
            result = (result * b).divrem(modulus)[1]
        e >>= 1
        if e:
            b = (b * b).divrem(modulus)[1]
    return result


# ---------------------------------------------------------------- divisibility


def _sparse(p: UPoly):
    if isinstance(p.ring, PolyRing):
        return {k: mpq(v) for k, v in bi_terms(p).items()}
    return {(i, 0): mpq(c) for i, c in enumerate(p.c) if c != 0}


def divides(f: UPoly, p: UPoly) -> bool:
    """Exact divisibility over Q of bivariate polynomials (lex-order division)."""
    if not f.c:
        raise ValueError("divisor is zero")
    return sparse_divide(_sparse(p), _sparse(f)) is not None


def sparse_divide(num: dict, den: dict):
    """Quotient num/den in Q[a, b] under lex order, or None if not exact."""
    if not den:
        raise DivisionByZero("zero divisor")
    lt = max(den)
    lcf = den[lt]
    rest = [(k, c) for k, c in den.items() if k != lt]
    num = dict(num)
    quo = {}
    while num:
        top = max(num)
        if top[0] < lt[0] or top[1] < lt[1]:
            return None
        c = num.pop(top) / lcf
        mon = (top[0] - lt[0], top[1] - lt[1])
        quo[mon] = c
        for (i, j), d in rest:
            key = (i + mon[0], j + mon[1])
            v = num.get(key, 0) - c * d
            if v:
                num[key] = v
            else:
                num.pop(key, None)
    return quo


# ---------------------------------------------------------------- parsing

def parse_terms(text: str, variables=("a", "b"), line=None) -> dict:
    """Parse ``c*a^i*b^j`` terms joined by +/- into {exponents: Rational}."""
    s = text.replace("−", "-").replace(" ", "")
    if not s:
        raise ParseError("empty polynomial", line)
    terms = {}
    pos = 0
    first = True
    tok = re.compile(r"([+-]?)([^+-]+)")
    while pos < len(s):
        m = tok.match(s, pos)
        if not m or (not first and not m.group(1)):
            raise ParseError(f"cannot parse {text!r} near position {pos}", line)
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2)
        coef = mpq(sign)
        exps = [0] * len(variables)
        for factor in body.split("*"):
            if not factor:
                raise ParseError(f"empty factor in {text!r}", line)
            fm = re.fullmatch(r"(\d+)(?:/(\d+))?", factor)
            if fm:
                den = int(fm.group(2)) if fm.group(2) else 1
                if den == 0:
                    raise ParseError("zero denominator", line)
                coef *= mpq(int(fm.group(1)), den)
                continue
            vm = re.fullmatch(r"([A-Za-z_]\w*)(?:\^(\d+))?", factor)
            if not vm or vm.group(1) not in variables:
                raise ParseError(f"unknown factor {factor!r}", line)
            exps[variables.index(vm.group(1))] += int(vm.group(2) or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coef
        pos = m.end()
        first = False
    return {k: v for k, v in terms.items() if v != 0}


def parse_bipoly(text: str, outer="a", inner="b", ring=ZZ, line=None) -> UPoly:
    terms = parse_terms(text, (outer, inner), line)
    if isinstance(ring, IntegerRing) and any(mpq(v).denominator != 1 for v in terms.values()):
        raise ParseError(f"non-integer coefficient in {text!r}", line)
    return bipoly({k: ring.coerce(v) for k, v in terms.items()}, outer, inner, ring)


def parse_upoly(text: str, var="t", ring=QQ, line=None) -> UPoly:
    terms = parse_terms(text, (var,), line)
    if not terms:
        return UPoly((), ring, var)
    deg = max(k[0] for k in terms)
    return UPoly([terms.get((i,), 0) for i in range(deg + 1)], ring, var)


def format_bipoly(p: UPoly) -> str:
    """Render in the corpus grammar, outer variable first."""
    terms = bi_terms(p)
    if not terms:
        return "0"
    out = []
    for (i, j) in sorted(terms, key=lambda k: (-(k[0] + k[1]), -k[0], -k[1])):
        c = mpq(terms[(i, j)])
        mons = []
        if i:
            mons.append(p.var if i == 1 else f"{p.var}^{i}")
        if j:
            mons.append(p.ring.var if j == 1 else f"{p.ring.var}^{j}")
        mag = abs(c)
        cs = str(mag) if mag.denominator != 1 else str(mag.numerator)
        body = "*".join(([cs] if cs != "1" or not mons else []) + mons)
        out.append(("-" if c < 0 else "+") + body)
    s = " ".join(out)
    return s[1:] if s.startswith("+") else s


__all__ = [
    "Ring", "IntegerRing", "RationalField", "Zmod", "PolyRing", "ZZ", "QQ", "UPoly",
    "poly", "zero", "one", "gen", "gcd", "xgcd", "gcd_subresultant_zz", "resultant",
    "resultant_sylvester", "sylvester_matrix", "pseudo_rem", "subresultant_prs",
    "bipoly", "bi_terms", "transpose", "bi_degrees", "eval_inner", "eval_outer",
    "reduce_mod_2k", "squarefree_bivariate", "squarefree_univariate",
    "rational_roots", "divides", "sparse_divide", "parse_terms", "parse_bipoly",
    "parse_upoly", "format_bipoly", "primitive_zz", "content_zz", "kron_mul",
]
