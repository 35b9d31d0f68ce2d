"""Rationals, the 2-adic valuation and reduction map, and heights."""

from __future__ import annotations

import enum
import math
import re

import gmpy2
import mpmath
from gmpy2 import mpq, mpz

from .errors import DomainError, NotTwoIntegral

Rational = type(mpq(0))
INF = math.inf

_RAT_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class Residue(enum.Enum):
    ZERO = "0"
    ONE = "1"
    INFINITY = "inf"


def Q(x, den=None) -> Rational:
    """Coerce ints, strings like "-9/16" or rationals to an exact rational."""
    if den is not None:
        return mpq(x, den)
    if isinstance(x, str):
        return parse_rational(x)
    return mpq(x)


def parse_rational(text: str) -> Rational:
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return mpq(int(num), int(den) if den else 1)


def fmt_rational(x) -> str:
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _v2_int(n) -> int:
    return gmpy2.bit_scan1(mpz(abs(n)))


def v2(x):
    """2-adic valuation; +inf at zero."""
    x = mpq(x)
    if x == 0:
        return INF
    return _v2_int(x.numerator) - _v2_int(x.denominator)


def rho(x) -> Residue:
    x = mpq(x)
    if v2(x) < 0:
        return Residue.INFINITY
    return Residue.ONE if x.numerator % 2 else Residue.ZERO


def mod4_class(x) -> int:
    x = mpq(x)
    if v2(x) < 0:
        raise NotTwoIntegral(f"{fmt_rational(x)} is not 2-integral")
    return int(x.numerator * pow(int(x.denominator), -1, 4) % 4)


def log_height(x, prec: int = 64):
    x = mpq(x)
    with mpmath.workprec(prec):
        return mpmath.log(max(abs(x.numerator), x.denominator))


def hbar(x, prec: int = 64):
    x = mpq(x)
    if x == 0 or x == 1:
        raise DomainError("hbar is undefined at 0 and 1")
    with mpmath.workprec(prec):
        total = log_height(x, prec) + log_height(1 - x, prec) + log_height(1 - 1 / x, prec)
        return total / 3
