"""Shared oracles: conversions to sympy for independent recomputation."""

from __future__ import annotations

import sys
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import settings

from cuspcalc.algebra import PolyRing, Polynomial, QOmega

settings.register_profile("suite", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("suite")

OMEGA_SYM = sp.Rational(-1, 2) + sp.sqrt(3) * sp.I / 2


def sym_coeff(c):
    if isinstance(c, QOmega):
        return sp.Rational(c.a.numerator, c.a.denominator) + sp.Rational(c.b.numerator, c.b.denominator) * OMEGA_SYM
    c = Fraction(c)
    return sp.Rational(c.numerator, c.denominator)


def to_sympy(p: Polynomial, symbols=None):
    """The polynomial as a sympy expression in symbols named like the ring variables."""
    xs = symbols or sp.symbols(p.ring.variables) if p.ring.ngens else ()
    if p.ring.ngens == 1 and not isinstance(xs, (tuple, list)):
        xs = (xs,)
    expr = sp.Integer(0)
    for e, c in p.terms.items():
        term = sym_coeff(c)
        for x, k in zip(xs, e):
            term *= x**k
        expr += term
    return sp.expand(expr)


def from_sympy(expr, ring: PolyRing) -> Polynomial:
    xs = sp.symbols(ring.variables)
    if ring.ngens == 1 and not isinstance(xs, (tuple, list)):
        xs = (xs,)
    poly = sp.Poly(sp.expand(expr), *xs)
    terms = {}
    for mono, c in poly.terms():
        c = sp.Rational(c)
        terms[tuple(mono)] = Fraction(int(c.p), int(c.q))
    return ring.from_terms(terms)


def sym_equal(a, b) -> bool:
    return sp.simplify(sp.expand(a - b)) == 0


@pytest.fixture
def ring4():
    return PolyRing(("x", "y", "z", "w"))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
