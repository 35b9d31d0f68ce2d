import pytest
from gmpy2 import mpq

from legtors.divpoly import d
from legtors.errors import DomainError, ParseError
from legtors.poly import bi_degrees
from legtors.resultants import (eval_ab, load_corpus, parse_corpus, r_m, r_pair, swap_ab, verify_squarefree,
                                verify_table1)


@pytest.mark.parametrize("m,bideg", [(3, (6, 6)), (4, (15, 15))])
def test_small_resultants(m, bideg):
    rec = r_m(m)
    assert rec.bidegree == bideg
    assert rec.removed == d(m)
    assert verify_squarefree(m)


def test_resultant_is_symmetric():
    rec = r_m(3)
    assert swap_ab(rec.poly) == rec.poly or swap_ab(rec.poly) == -rec.poly


def test_resultant_vanishes_on_a_plus_b():
    for a in (mpq(1), mpq(3, 7), mpq(-5)):
        assert eval_ab(r_m(4).poly, a, -a) == 0


def test_pair_resultant_degree():
    rec = r_pair(3, 4)
    assert bi_degrees(rec.poly)[0] > 0


def test_cap():
    with pytest.raises(DomainError):
        r_m(2)


def test_corpus_parsing():
    entries = load_corpus()
    assert len(entries) == 35
    assert {e.bidegree for e in entries} == {(1, 1), (1, 2), (2, 1), (2, 2), (2, 4), (4, 2)}
    with pytest.raises(ParseError) as exc:
        parse_corpus("[1,1]\na + + b\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_corpus("a + b\n")


def test_table1_fast_subset():
    rep = verify_table1(max_m=4)
    assert rep.ok and len(rep.passed) == 35
    assert {e["source"] for e in rep.passed} >= {"R_4"}


def test_table1_rejects_foreign_polynomial(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("[1,1]\na + 2*b + 7\n")
    rep = verify_table1(str(bad), max_m=4)
    assert not rep.ok and len(rep.failed) == 1
