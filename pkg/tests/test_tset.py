import pytest
from gmpy2 import mpq

from legtors.poly import parse_upoly
from legtors.quotring import QuotRing, parse_field
from legtors.tset import common_root_poly, t_set_bounded

RATIONAL_PAIRS = [(3, -3), (2, 4), (mpq(3, 8), mpq(-9, 16)), (2, 3), (-2, 4)]


def members(rep):
    return {m[0]: (m[1], m[2]) for m in rep.members}


def from_gcd(rep, alpha, beta):
    return [m for m in rep.members if m[0] != alpha and m[0] != beta]


def test_rational_reports():
    rep = t_set_bounded(3, -3, 8)
    assert members(rep) == {-3: (4, 2), 9: (4, 4)}
    assert rep.complete
    rep = t_set_bounded(2, 4, 8)
    assert members(rep) == {4: (4, 2)} and rep.discarded == [0]
    assert members(t_set_bounded(2, 3, 8)) == {}


def test_omega_example():
    K = QuotRing(parse_upoly("t^2+t+1"))
    w = K.gen()
    rep = t_set_bounded(w, w * w, 8)
    got = members(rep)
    assert len(got) == 2 and rep.complete
    assert got[w] == (2, 4) and got[w * w] == (4, 2)


@pytest.mark.parametrize("a,b", RATIONAL_PAIRS)
def test_degree_accounting(a, b):
    a, b = mpq(a), mpq(b)
    rep = t_set_bounded(a, b, 8)
    g = common_root_poly(a, b, 8)
    assert rep.gcd_degree == max(g.degree, 0)
    assert rep.gcd_degree == len(from_gcd(rep, a, b)) + len(rep.discarded) + max(rep.residual.degree, 0)


@pytest.mark.parametrize("a,b", RATIONAL_PAIRS)
def test_monotone_in_bound(a, b):
    small, large = t_set_bounded(mpq(a), mpq(b), 6), t_set_bounded(mpq(a), mpq(b), 10)
    assert set(members(small)) <= set(members(large))


@pytest.mark.parametrize("a,b", RATIONAL_PAIRS)
def test_swap_invariance(a, b):
    r1, r2 = t_set_bounded(mpq(a), mpq(b), 8), t_set_bounded(mpq(b), mpq(a), 8)
    assert {k: v for k, v in members(r1).items()} == {k: v[::-1] for k, v in members(r2).items()}


@pytest.mark.parametrize("a,b", RATIONAL_PAIRS[:3])
def test_reflection_maps_members(a, b):
    a, b = mpq(a), mpq(b)
    base = members(t_set_bounded(a, b, 6))
    moved = members(t_set_bounded(1 - a, 1 - b, 12))
    assert {1 - lam for lam in base} <= set(moved)


def test_incomplete_report_keeps_residual():
    K, e = parse_field("t^2+1;i=t")
    i = e["i"]
    rep = t_set_bounded(i, -i, 6)
    assert members(rep) == {K.coerce(-1): (4, 4)}
    assert not rep.complete
    assert rep.residual.to_str() == "lambda^2 - 6*lambda + 1"


def test_candidates_are_checked_first(fields):
    K, e = fields["zeta8_a"]
    i, s2 = e["i"], e["s2"]
    rep = t_set_bounded(i, -i, 6, candidates=[3 + 2 * s2, 3 - 2 * s2, K.coerce(5)])
    got = members(rep)
    assert got[3 + 2 * s2] == (6, 6) and got[3 - 2 * s2] == (6, 6)
    assert K.coerce(5) not in got
    assert rep.complete


def test_json_shape():
    rep = t_set_bounded(3, -3, 8)
    js = rep.to_json(str)
    assert set(js) == {"members", "residual", "complete", "discarded", "gcd_degree"}
    assert js["members"][0] == {"lambda": "-3", "orders": [4, 2]}
