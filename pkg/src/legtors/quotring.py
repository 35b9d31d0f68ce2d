"""Number-field arithmetic as quotient rings Q[t]/(m(t)), with complex embeddings."""

from __future__ import annotations

import gmpy2
import mpmath
from gmpy2 import mpq, mpz

from . import config
from .errors import DivisionByZero, NumericPrecisionExceeded, ParseError, RingMismatch, ZeroDivisorFound
from .poly import QQ, Ring, UPoly, gcd, parse_upoly, primitive_zz, xgcd


class QuotRing(Ring):
    """Q[t]/(m) for a monic m; irreducibility is not checked."""

    is_field = True

    def __init__(self, modulus, var="t"):
        if not isinstance(modulus, UPoly):
            modulus = UPoly(modulus, QQ, var)
        if modulus.degree < 1:
            raise ValueError("modulus must have degree at least 1")
        if modulus.lc != 1:
            raise ValueError("modulus must be monic")
        self.modulus = modulus.change_ring(QQ) if modulus.ring != QQ else modulus
        self.var = modulus.var
        self.n = modulus.degree
        n = self.n
        # t^k mod m for n <= k <= 2n - 2
        table = []
        cur = [mpq(0)] * n
        low = [-c for c in self.modulus.c[:n]]
        cur = low[:]
        for _ in range(n, 2 * n - 1):
            table.append(cur)
            top = cur[-1]
            cur = [mpq(0)] + cur[:-1]
            cur = [a + top * b for a, b in zip(cur, low)]
        self._table = table
        self.zero = FieldElem(self, ())
        self.one = FieldElem(self, (mpq(1),))
        self._roots = {}

    def __eq__(self, other):
        return isinstance(other, QuotRing) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("Quot", self.modulus))

    def __repr__(self):
        return f"QuotRing({self.modulus.to_str()})"

    def elem(self, coeffs) -> "FieldElem":
        cs = [mpq(c) for c in coeffs]
        if len(cs) > self.n:
            return self.from_poly(UPoly(cs, QQ, self.var))
        return FieldElem(self, cs)

    def from_poly(self, p: UPoly) -> "FieldElem":
        p = p.change_ring(QQ) if p.ring != QQ else p
        return FieldElem(self, p.divrem(self.modulus)[1].c)

    def gen(self) -> "FieldElem":
        if self.n == 1:
            return self.from_poly(UPoly((0, 1), QQ, self.var))
        return FieldElem(self, (mpq(0), mpq(1)))

    def embed(self, x) -> "FieldElem":
        return self.coerce(x)

    def coerce(self, x):
        if isinstance(x, FieldElem):
            if x.parent != self:
                raise RingMismatch("element of a different quotient ring")
            return x
        if isinstance(x, UPoly):
            raise RingMismatch("polynomial is not a field element")
        return FieldElem(self, (mpq(x),))

    def is_zero(self, x):
        return not x.c

    def inv(self, x):
        return self.coerce(x).inv()

    def exact_div(self, a, b):
        return a * self.inv(b)

    def _reduce(self, cs):
        n = self.n
        if len(cs) <= n:
            return cs
        out = list(cs[:n])
        for k in range(n, len(cs)):
            ck = cs[k]
            if ck:
                row = self._table[k - n]
                for i in range(n):
                    out[i] += ck * row[i]
        return out

    # numeric embeddings
    def roots(self, prec=None):
        prec = prec or config.precision_bits()
        if prec not in self._roots:
            rts = aberth_roots([mpq(c) for c in self.modulus.c], prec)
            with mpmath.workprec(prec):
                rts.sort(key=lambda z: (mpmath.nint(z.real * 10**12), mpmath.nint(-z.imag * 10**12)))
            self._roots[prec] = rts
        return self._roots[prec]


class FieldElem:
    """Residue class of a rational polynomial modulo the ring's modulus."""

    __slots__ = ("parent", "c")

    def __init__(self, parent: QuotRing, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.parent = parent
        self.c = tuple(cs)

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.parent is not self.parent and other.parent != self.parent:
                raise RingMismatch("elements of different quotient rings")
            return other
        if isinstance(other, UPoly):
            return NotImplemented
        return FieldElem(self.parent, (mpq(other),))

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] += y
        return FieldElem(self.parent, out)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.parent, [-x for x in self.c])

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if not a or not b:
            return FieldElem(self.parent, ())
        if len(b) == 1:
            s = b[0]
            return FieldElem(self.parent, [x * s for x in a])
        if len(a) == 1:
            s = a[0]
            return FieldElem(self.parent, [x * s for x in b])
        out = [mpq(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return FieldElem(self.parent, self.parent._reduce(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.parent.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inv(self) -> "FieldElem":
        if not self.c:
            raise DivisionByZero("inverse of zero in quotient ring")
        rep = self.to_poly()
        g, s, _ = xgcd(rep, self.parent.modulus)
        if g.degree > 0:
            raise ZeroDivisorFound(g)
        return FieldElem(self.parent, s.divrem(self.parent.modulus)[1].c)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        return self._other(other) * self.inv()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.parent == other.parent and self.c == other.c
        if isinstance(other, UPoly):
            return NotImplemented
        try:
            return self.c == FieldElem(self.parent, (mpq(other),)).c
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if len(self.c) <= 1:
            return hash(self.c[0] if self.c else mpq(0))
        return hash(self.c)

    def __bool__(self):
        return bool(self.c)

    def is_rational(self) -> bool:
        return len(self.c) <= 1

    def rational(self):
        if len(self.c) > 1:
            raise ValueError("element is not rational")
        return self.c[0] if self.c else mpq(0)

    def to_poly(self) -> UPoly:
        return UPoly._raw(self.c, QQ, self.parent.var)

    def coeffs(self, n=None):
        n = n or self.parent.n
        return list(self.c) + [mpq(0)] * (n - len(self.c))

    def to_complex(self, root):
        acc = mpmath.mpc(0)
        for c in reversed(self.c):
            acc = acc * root + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def embedding(self, index=0, prec=None):
        prec = prec or config.precision_bits()
        root = self.parent.roots(prec)[index]
        with mpmath.workprec(prec):
            return self.to_complex(root)

    def __repr__(self):
        return f"FieldElem({self.to_str()!r})"

    def to_str(self):
        return self.to_poly().to_str()

    __str__ = to_str


# ---------------------------------------------------------------- numerics


def _to_mp(c):
    if isinstance(c, (mpmath.mpf, mpmath.mpc)):
        return c
    if isinstance(c, complex):
        return mpmath.mpc(c)
    q = mpq(c)
    return mpmath.mpf(q.numerator) / q.denominator


def aberth_roots(coeffs, prec=None, maxiter=2000):
    """All complex roots (lowest-degree-first coefficients) by Aberth iteration."""
    prec = prec or config.precision_bits()
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    n = len(cs) - 1
    if n < 1:
        return []
    with mpmath.workprec(prec + 32):
        a = [_to_mp(c) for c in cs]
        lead = a[-1]
        a = [c / lead for c in a]
        if n == 1:
            return [mpmath.mpc(-a[0])]
        da = [a[i] * i for i in range(1, n + 1)]
        radius = 1 + max(abs(c) for c in a[:-1]) if n else 1
        radius = min(radius, 2 * max(abs(a[n - k]) ** (mpmath.mpf(1) / k) for k in range(1, n + 1)) + 1)
        z = [radius / 2 * mpmath.expj(2 * mpmath.pi * k / n + mpmath.mpf("0.4")) for k in range(n)]
        eps = mpmath.mpf(2) ** (-(prec + 8))

        def horner(cs_, x):
            acc = mpmath.mpc(0)
            for c in reversed(cs_):
                acc = acc * x + c
            return acc

        for _ in range(maxiter):
            biggest = 0
            for k in range(n):
                pk = horner(a, z[k])
                dk = horner(da, z[k])
                if pk == 0:
                    continue
                ratio = pk / dk if dk != 0 else mpmath.mpc(eps)
                s = mpmath.fsum(1 / (z[k] - z[j]) for j in range(n) if j != k and z[k] != z[j])
                w = ratio / (1 - ratio * s)
                z[k] -= w
                rel = abs(w) / max(1, abs(z[k]))
                if rel > biggest:
                    biggest = rel
            if biggest < eps:
                break
        else:
            raise NumericPrecisionExceeded(f"Aberth iteration did not converge at {prec} bits")
        # a posteriori residual check
        for zk in z:
            scale = mpmath.fsum(abs(c) * abs(zk) ** i for i, c in enumerate(a))
            if abs(horner(a, zk)) > scale * mpmath.mpf(2) ** (-(prec // 2)):
                raise NumericPrecisionExceeded("root residual too large")
    with mpmath.workprec(prec):
        return [+zk for zk in z]


def height_from_minpoly(p: UPoly, prec=None):
    """Absolute logarithmic height of a root of the squarefree polynomial p."""
    if p.degree < 1:
        raise ValueError("polynomial must be nonconstant")
    prec = prec or config.precision_bits()
    pz = primitive_zz(p)
    roots = aberth_roots(list(pz.c), prec)
    with mpmath.workprec(prec):
        total = mpmath.log(abs(mpmath.mpf(pz.lc)))
        total += mpmath.fsum(mpmath.log(max(1, abs(z))) for z in roots)
        return total / pz.degree


# ---------------------------------------------------------------- descriptors


def parse_field(descriptor: str):
    """Parse ``"m(t);name=<poly in t>;..."`` into (ring, {name: element})."""
    parts = [s.strip() for s in descriptor.split(";") if s.strip()]
    if not parts:
        raise ParseError("empty field descriptor")
    head = parts[0]
    var = "t"
    modulus = parse_upoly(head, var)
    if modulus.lc != 1:
        modulus = modulus.monic()
    ring = QuotRing(modulus, var)
    named = {}
    for item in parts[1:]:
        if "=" not in item:
            raise ParseError(f"expected name=poly, got {item!r}")
        name, rhs = (s.strip() for s in item.split("=", 1))
        named[name] = ring.from_poly(parse_upoly(rhs, var))
    return ring, named


def parse_element(ring: QuotRing, text: str) -> FieldElem:
    return ring.from_poly(parse_upoly(text, ring.var))


def satisfies(elem: FieldElem, minpoly: UPoly) -> bool:
    """Exact check that elem is a root of minpoly (fixture validation)."""
    acc = elem.parent.zero
    for c in reversed(minpoly.c):
        acc = acc * elem + c
    return not acc


def is_zero_divisor_free(ring: QuotRing) -> bool:
    return gcd(ring.modulus, ring.modulus.derivative()).degree == 0


__all__ = ["QuotRing", "FieldElem", "aberth_roots", "height_from_minpoly", "parse_field",
           "parse_element", "satisfies"]
