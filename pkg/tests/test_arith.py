import math

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from legtors.arith import (INF, Q, Residue, fmt_rational, hbar, log_height, mod4_class, parse_rational,
                           rho, v2)
from legtors.errors import DomainError, NotTwoIntegral

LOG2 = math.log(2)

nonzero = st.fractions().filter(lambda f: f != 0).map(lambda f: mpq(f.numerator, f.denominator))
rationals = st.fractions().map(lambda f: mpq(f.numerator, f.denominator))
hb_args = st.fractions(max_denominator=10**6).filter(lambda f: f not in (0, 1)).map(
    lambda f: mpq(f.numerator, f.denominator))


def test_parse_and_format():
    assert parse_rational("-9/16") == mpq(-9, 16)
    assert parse_rational(" 12 ") == 12
    assert parse_rational("6/4") == mpq(3, 2)
    assert fmt_rational(mpq(-9, 16)) == "-9/16"
    assert fmt_rational(mpq(0)) == "0"
    for bad in ("", "1/0", "1.5", "a", "1/-2", "--1"):
        with pytest.raises(ValueError):
            parse_rational(bad)


@given(rationals)
def test_format_round_trip(q):
    assert parse_rational(fmt_rational(q)) == q


def test_normal_form():
    q = Q(6, -4)
    assert q.numerator == -3 and q.denominator == 2
    assert Q("0").denominator == 1


def test_valuation_examples():
    assert v2(12) == 2
    assert v2(mpq(3, 8)) == -3
    assert v2(0) == INF


@given(nonzero, nonzero)
def test_valuation_laws(a, b):
    assert v2(a * b) == v2(a) + v2(b)
    if a + b != 0:
        assert v2(a + b) >= min(v2(a), v2(b))
        if v2(a) != v2(b):
            assert v2(a + b) == min(v2(a), v2(b))


def test_rho_examples():
    assert rho(2) is Residue.ZERO
    assert rho(3) is Residue.ONE
    assert rho(mpq(3, 8)) is Residue.INFINITY
    assert rho(mpq(2, 3)) is Residue.ZERO


@given(rationals)
def test_rho_of_square(q):
    assert rho(q * q) == rho(q)


@given(rationals)
def test_rho_infinity_iff_negative_valuation(q):
    assert (rho(q) is Residue.INFINITY) == (v2(q) < 0)


def test_mod4_examples():
    assert mod4_class(-3) == 1
    assert mod4_class(mpq(1, 3)) == 3
    with pytest.raises(NotTwoIntegral):
        mod4_class(mpq(3, 8))


def test_height_examples():
    assert abs(log_height(2) - LOG2) < 1e-12
    assert abs(log_height(mpq(1, 3)) - math.log(3)) < 1e-12
    assert log_height(-1) == 0
    assert log_height(0) == 0
    assert abs(hbar(-1) - 2 * LOG2 / 3) < 1e-12
    assert abs(hbar(2) - 2 * LOG2 / 3) < 1e-12
    assert abs(hbar(mpq(1, 2)) - hbar(2)) < 1e-12
    with pytest.raises(DomainError):
        hbar(1)


@given(hb_args)
def test_hbar_invariance(q):
    h = hbar(q)
    assert abs(hbar(1 - q) - h) < 1e-12
    assert abs(hbar(1 / q) - h) < 1e-12


def test_height_inequalities_random(rng):
    for _ in range(1000):
        den = rng.randint(1, 10**6)
        q = mpq(rng.randint(-10**6, 10**6), den)
        if q in (0, 1):
            continue
        h, hb = float(log_height(q)), float(hbar(q))
        assert hb - 2 * LOG2 / 3 <= h + 1e-12
        assert h <= hb + LOG2 / 3 + 1e-12


def test_height_inequalities_attained():
    assert abs(float(hbar(-1)) - 2 * LOG2 / 3 - float(log_height(-1))) < 1e-12
    assert abs(float(log_height(2)) - float(hbar(2)) - LOG2 / 3) < 1e-12
