"""Exact polynomial arithmetic over Q, Q(omega) and rational function fields."""

from .fields import I_SQRT3, OMEGA, QQ, QQ_OMEGA, QOmega
from .orders import DEGREVLEX, LEX, NEGDEGREVLEX, MonomialOrder, OrderKind, lex_order
from .parse import parse_polynomial, parse_scalar
from .polynomial import PolyRing, Polynomial, partial_derivative, translate
from .ratfunc import FractionField, RationalFunction
from .univariate import divide_with_remainder, resultant, resultant_report

__all__ = [
    "DEGREVLEX",
    "FractionField",
    "I_SQRT3",
    "LEX",
    "MonomialOrder",
    "NEGDEGREVLEX",
    "OMEGA",
    "OrderKind",
    "PolyRing",
    "Polynomial",
    "QOmega",
    "QQ",
    "QQ_OMEGA",
    "RationalFunction",
    "divide_with_remainder",
    "lex_order",
    "parse_polynomial",
    "parse_scalar",
    "partial_derivative",
    "resultant",
    "resultant_report",
    "translate",
]
