"""Component census of the simultaneous-torsion curve by orbit enumeration.

Components correspond to orbits of the level-2 congruence subgroup of GL2 acting
diagonally on pairs of +-classes of torsion points.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .divpoly import _prime_divisors, delta
from .errors import GeneratorValidationFailed

# bidegree -> count for d_max = 24, the published table
REFERENCE_TABLE = {
    (1, 1): 3, (1, 2): 3, (2, 1): 3, (2, 2): 18, (2, 4): 4, (4, 2): 4, (4, 4): 45, (4, 8): 3, (8, 4): 3,
    (6, 6): 44, (6, 12): 4, (12, 6): 4, (8, 8): 57, (8, 16): 3, (16, 8): 3, (12, 12): 68, (12, 24): 4,
    (24, 12): 4, (16, 16): 96, (16, 32): 3, (32, 16): 3, (18, 18): 76, (18, 36): 4, (36, 18): 4,
    (24, 24): 161, (24, 48): 3, (48, 24): 3,
}
REFERENCE_DMAX = 24


def _factor(n):
    out = {}
    for p in _prime_divisors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def _primitive_root(q, p):
    phi = q // p * (p - 1)
    for g in range(2, q):
        if math.gcd(g, q) == 1 and all(pow(g, phi // r, q) != 1 for r in _prime_divisors(phi)):
            return g
    raise GeneratorValidationFailed(f"no primitive root mod {q}")


def _crt_lift(mat, q, L):
    """Matrix congruent to mat mod q and to the identity mod L/q."""
    r = L // q
    inv = pow(r, -1, q) if q > 1 else 0
    out = []
    for i, row in enumerate(mat):
        new = []
        for j, m in enumerate(row):
            idv = 1 if i == j else 0
            new.append((idv + r * (((m - idv) * inv) % q)) % L)
        out.append(tuple(new))
    return tuple(out)


def _local_generators(p, q):
    if p == 2:
        return [((1, 2), (0, 1)), ((1, 0), (2, 1)), ((-1, 0), (0, 1)), ((3, 0), (0, 1)),
                ((1, 0), (0, 3)), ((-1, 0), (0, -1))]
    g = _primitive_root(q, p)
    return [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((g, 0), (0, 1))]


def _matmul(a, b, m):
    return (((a[0][0] * b[0][0] + a[0][1] * b[1][0]) % m, (a[0][0] * b[0][1] + a[0][1] * b[1][1]) % m),
            ((a[1][0] * b[0][0] + a[1][1] * b[1][0]) % m, (a[1][0] * b[0][1] + a[1][1] * b[1][1]) % m))


def closure_order(gens, m, limit=2_000_000):
    """Size of the group generated by gens mod m (BFS)."""
    ident = ((1 % m, 0), (0, 1 % m))
    gens = [tuple(tuple(x % m for x in row) for row in g) for g in gens]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _matmul(g, x, m)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise GeneratorValidationFailed("closure exceeded limit")
        frontier = nxt
    return len(seen)


def expected_order(q):
    """|GL2(Z/q)| for odd prime powers; the kernel of reduction mod 2 for powers of 2."""
    (p, a), = _factor(q).items()
    if p == 2:
        return 16 ** (a - 1)
    return q ** 4 * (p - 1) * (p * p - 1) // p ** 3


def _kernel_enumeration(q):
    """All matrices congruent to I mod 2 in GL2(Z/q), q a power of 2."""
    out = []
    for a in range(1, q, 2):
        for d in range(1, q, 2):
            for b in range(0, q, 2):
                for c in range(0, q, 2):
                    out.append(((a, b), (c, d)))
    return out


@lru_cache(maxsize=None)
def _validated_local(p, a):
    q = p ** a
    gens = _local_generators(p, q)
    if q <= 27 or p == 2 and q <= 16:
        got = closure_order(gens, q)
        if got != expected_order(q):
            if p == 2 and a <= 4:
                return tuple(_kernel_enumeration(q))
            raise GeneratorValidationFailed(f"mod {q}: closure {got}, expected {expected_order(q)}")
    return tuple(gens)


def congruence_group_generators(L: int):
    """Generators of {g in GL2(Z/L) : g = I mod gcd(L, 2)}, assembled by CRT."""
    out = []
    for p, a in sorted(_factor(L).items()):
        q = p ** a
        out.extend(_crt_lift(m, q, L) for m in _validated_local(p, a))
    return out


def _canon(a, b, n):
    a, b = a % n, b % n
    c, d = (-a) % n, (-b) % n
    return min((a, b), (c, d))


@lru_cache(maxsize=None)
def exact_order_elements(n):
    """+-classes of vectors of exact order n in (Z/n)^2."""
    s = set()
    for a in range(n):
        for b in range(n):
            if math.gcd(math.gcd(a, b), n) == 1:
                s.add(_canon(a, b, n))
    return tuple(sorted(s))


def _class_label(v, n):
    """Odd n: 0.  Even n: 0, 1, 2 for the 2-torsion point (n/2) v = (1,0), (0,1), (1,1)."""
    if n % 2:
        return 0
    h = n // 2
    t = ((v[0] * h) % n // h, (v[1] * h) % n // h)
    return {(1, 0): 0, (0, 1): 1, (1, 1): 2}[t]


def _perms(gens, elems, n):
    idx = {v: i for i, v in enumerate(elems)}
    return [[idx[_canon(g[0][0] * v[0] + g[0][1] * v[1], g[1][0] * v[0] + g[1][1] * v[1], n)]
             for v in elems] for g in gens]


@dataclass(frozen=True)
class PointClass:
    n: int
    label: int
    size: int


def classes(L: int):
    """Orbit decomposition of exact-order-n classes for each n | L, n >= 3."""
    out = []
    for n in range(3, L + 1):
        if L % n:
            continue
        elems = exact_order_elements(n)
        perms = _perms(congruence_group_generators(n), elems, n)
        seen = [False] * len(elems)
        for s in range(len(elems)):
            if seen[s]:
                continue
            seen[s] = True
            stack, size = [s], 0
            while stack:
                x = stack.pop()
                size += 1
                for p in perms:
                    y = p[x]
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            out.append(PointClass(n, _class_label(elems[s], n), size))
    return out


def validate_classes(n: int) -> bool:
    cls = [c for c in classes(n) if c.n == n]
    want = 1 if n % 2 else 3
    return len(cls) == want and all(c.size == 2 * delta(n) for c in cls) and \
        len({c.label for c in cls}) == want


@dataclass(frozen=True)
class OrbitComponent:
    n: int
    label: int
    n2: int
    label2: int
    size: int

    @property
    def bidegree(self):
        return (self.size // 2, self.size // 2)


def orbit_components(n: int, n2: int, max_size=None):
    """Orbits of the diagonal action on exact-order pairs (off the diagonal a = b)."""
    L = math.lcm(n, n2)
    gens = congruence_group_generators(L)
    e1, e2 = exact_order_elements(n), exact_order_elements(n2)
    p1, p2 = _perms(gens, e1, n), _perms(gens, e2, n2)
    M = len(e2)
    total = len(e1) * M
    seen = bytearray(total)
    out = []
    pairs = list(zip(p1, p2))
    for s in range(total):
        if seen[s]:
            continue
        i, j = divmod(s, M)
        if n == n2 and i == j:
            continue
        seen[s] = 1
        stack, size = [s], 0
        while stack:
            x = stack.pop()
            size += 1
            a, b = divmod(x, M)
            for q1, q2 in pairs:
                y = q1[a] * M + q2[b]
                if not seen[y]:
                    seen[y] = 1
                    stack.append(y)
        comp = OrbitComponent(n, _class_label(e1[i], n), n2, _class_label(e2[j], n2), size)
        if max_size is None or size <= max_size:
            out.append(comp)
    return out


@dataclass
class CensusResult:
    d_max: int
    counts: dict = field(default_factory=dict)
    sources: dict = field(default_factory=dict)
    flagged: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    def rows(self):
        return [{"bidegree": list(k), "count": self.counts[k],
                 "sources": sorted(self.sources.get(k, []))}
                for k in sorted(self.counts)]

    def to_json(self):
        return {"d_max": self.d_max, "rows": self.rows(),
                "flagged": [list(k) for k in self.flagged], "violations": self.violations}


def census_orders(d_max: int):
    # an orbit through order n has size divisible by 2 delta(n), so delta(n) <= d_max
    out = []
    n = 3
    while n < math.pi * math.sqrt(2 * d_max) + 1 or n <= 4:
        if delta(n) <= d_max:
            out.append(n)
        n += 1
    return out


def census(d_max: int) -> CensusResult:
    """Component counts by bidegree (d1, d2) with min(d1, d2) <= d_max."""
    if d_max < 1:
        raise ValueError("d_max must be positive")
    counts, sources = Counter(), {}
    res = CensusResult(d_max)
    orders = census_orders(d_max)
    for n in orders:
        dn = delta(n)
        labels = [0] if n % 2 else [0, 1, 2]
        for lab in labels:
            for key, src in (((dn, 2 * dn), [2, 0, n, lab, 2 * dn]), ((2 * dn, dn), [n, lab, 2, 0, 2 * dn])):
                counts[key] += 1
                sources.setdefault(key, []).append(src)
    for n in orders:
        for n2 in orders:
            for comp in orbit_components(n, n2, max_size=2 * d_max):
                if comp.size % 2 or comp.size % (2 * delta(n)) or comp.size % (2 * delta(n2)):
                    res.violations.append(f"orbit size {comp.size} for orders ({n},{n2})")
                key = comp.bidegree
                counts[key] += 1
                sources.setdefault(key, []).append([comp.n, comp.label, comp.n2, comp.label2, comp.size])
    res.counts = dict(counts)
    res.sources = sources
    if d_max <= REFERENCE_DMAX:
        res.flagged = sorted(k for k, v in counts.items() if v and k not in REFERENCE_TABLE)
    allowed = {1, 2, 4, 6, 8, 12, 16, 18, 24}
    for (a, b), v in counts.items():
        if a == b and v and a <= REFERENCE_DMAX and a not in allowed:
            res.violations.append(f"nonzero diagonal bidegree {a}")
    return res


def format_table(res: CensusResult) -> str:
    lines = ["bidegree  count"]
    for k in sorted(res.counts):
        lines.append(f"({k[0]},{k[1]})".ljust(10) + str(res.counts[k]))
    return "\n".join(lines)


__all__ = ["census", "classes", "orbit_components", "congruence_group_generators", "closure_order",
           "expected_order", "validate_classes", "CensusResult", "PointClass", "OrbitComponent",
           "REFERENCE_TABLE", "format_table"]
