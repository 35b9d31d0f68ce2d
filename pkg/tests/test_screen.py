import pytest
from gmpy2 import mpq

from legtors.arith import Residue, rho, v2
from legtors.divpoly import Infinity, lattes
from legtors.errors import DomainError
from legtors.screen import (cw_candidates, cw_verify, cyclotomic, decide_T_rational, r_disjoint,
                            roots_of_unity_T, s_set, screen_rational)

DECIDABLE = [(2, 3), (2, 4), (3, -3), (5, 7), (3, 5), (2, 5), (6, 3), (mpq(1, 2), 3)]


def test_s_set_examples():
    assert s_set(2) == [2, 4, mpq(4, 3)]
    assert s_set(3) == [3, 9, -3, mpq(9, 5)]
    assert s_set(-1) == [-1, -3, mpq(-1, 3)]


def test_s_set_matches_lattes_fibre(rng):
    for _ in range(100):
        a = mpq(rng.randint(-40, 40), rng.randint(1, 9))
        if a in (0, 1) or 2 * a == 1:
            continue
        ss = set(s_set(a))
        for lam in ss:
            v = lattes(lam, a)
            assert v is Infinity or v in (0, 1, lam)
        for _ in range(20):
            lam = mpq(rng.randint(-60, 60), rng.randint(1, 11))
            if lam in (0, 1) or lam in ss:
                continue
            v = lattes(lam, a)
            assert not (v is Infinity or v in (0, 1, lam))


def test_r_disjoint_examples():
    assert r_disjoint(2, 3) == (True, "disjoint-1")
    assert r_disjoint(2, 4) == (True, "disjoint-4")
    assert r_disjoint(4, 8)[0] is False


def test_screen_examples():
    v = screen_rational(2, 3)
    assert v.tag == "empty"
    v = screen_rational(3, -3)
    assert v.tag == "subset" and set(v.candidates) == {9, -3}
    v = screen_rational(2, 4)
    assert v.tag == "subset" and set(v.candidates) == {4}


@pytest.mark.parametrize("a,b", DECIDABLE + [(7, -1), (6, 10), (4, 8)])
def test_screen_is_symmetric(a, b):
    s1, s2 = screen_rational(a, b), screen_rational(b, a)
    assert s1.tag == s2.tag
    assert set(s1.candidates) == set(s2.candidates)


def test_decisions():
    assert decide_T_rational(2, 3).members == []
    assert decide_T_rational(2, 4).members == [4]
    assert decide_T_rational(3, -3).members == [-3, 9]
    assert decide_T_rational(2, 3).status == "exact"


@pytest.mark.parametrize("a,b", DECIDABLE)
def test_decisions_are_gamma_invariant(a, b):
    a, b = mpq(a), mpq(b)
    d1 = decide_T_rational(a, b)
    d2 = decide_T_rational(1 - a, 1 - b)
    if d1.status == d2.status == "exact":
        assert {1 - x for x in d1.members} == set(d2.members)
    d3 = decide_T_rational(b, a)
    if d1.status == d3.status == "exact":
        assert set(d1.members) == set(d3.members)


@pytest.mark.parametrize("a,b", DECIDABLE)
def test_members_respect_reduction_constraints(a, b):
    a, b = mpq(a), mpq(b)
    for lam in decide_T_rational(a, b).members:
        for alpha in (a, b):
            if lam == alpha or v2(alpha) < 0:
                continue
            assert rho(lam) == rho(alpha * alpha)
            assert v2(lam - alpha * alpha) >= 1


def test_roots_of_unity():
    assert roots_of_unity_T(2)["members"] == ["zeta"]
    assert roots_of_unity_T(3)["members"] == ["zeta", "zeta^2", "-zeta^2"]
    assert roots_of_unity_T(5)["members"] == ["zeta", "zeta^2"]
    for k in (2, 3, 4, 5, 6, 8, 12):
        assert roots_of_unity_T(k, verify=True)["verified"], k
    with pytest.raises(DomainError):
        roots_of_unity_T(1)


def test_cyclotomic():
    assert cyclotomic(12).to_str() == "t^4 - t^2 + 1"
    assert cyclotomic(8).to_str() == "t^4 + 1"


def test_cw_candidates():
    pairs = cw_candidates(mpq(1), mpq(2), mpq(3))
    assert pairs == [(-7, 6), (-13, 12), (-19, 30)]
    assert sorted(cw_candidates(mpq(2), mpq(1), mpq(3))) == sorted(pairs)
    with pytest.raises(DomainError):
        cw_candidates(mpq(1), mpq(1), mpq(3))


def test_cw_verify():
    rows, dropped = cw_verify(1, 2, 3)
    assert not dropped
    for row, pair in zip(rows, ((0, 1), (0, 2), (1, 2))):
        two = [i for i, o in enumerate(row["orders"]) if o.tag == "order_two"]
        assert tuple(two) == pair
        for i in pair:
            x = mpq((1, 2, 3)[i])
            assert x**3 + row["A"] * x + row["B"] == 0


def test_cw_singular_dropped():
    # alpha, beta roots with A = -3, B = 2 gives 4A^3 + 27B^2 = 0
    rows, dropped = cw_verify(1, -2, 5)
    assert any(d["reason"] == "singular" for d in dropped)
