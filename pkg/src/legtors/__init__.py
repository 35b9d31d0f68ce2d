"""Exact computations for simultaneous torsion in the Legendre family."""

from .arith import fmt_rational, parse_rational
from .divpoly import legendre_psi, psi_tilde, weierstrass_psi
from .quotring import QuotRing, parse_field
from .torsion import TorsionResult, nontorsion_certificate, order_bounded
from .tset import t_set_bounded

__version__ = "0.1.0"

__all__ = ["legendre_psi", "psi_tilde", "weierstrass_psi", "QuotRing", "parse_field", "order_bounded",
           "nontorsion_certificate", "TorsionResult", "t_set_bounded", "parse_rational", "fmt_rational"]
