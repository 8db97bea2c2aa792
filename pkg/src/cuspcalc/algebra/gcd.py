"""Exact multivariate division and gcd over a field.

The gcd is computed recursively: split off the content with respect to the
first variable in use, then run a primitive pseudo-remainder sequence on the
primitive parts.
"""

from __future__ import annotations

from .orders import LEX
from .polynomial import Polynomial


class NotDivisible(ArithmeticError):
    pass


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return q with f = q*g, raising :class:`NotDivisible` otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    key = LEX.key
    ge, gc = g.leading_term(LEX)
    rem = dict(f.terms)
    q: dict = {}
    gterms = list(g.terms.items())
    while rem:
        e = max(rem, key=key)
        c = rem[e]
        d = tuple(a - b for a, b in zip(e, ge))
        if any(x < 0 for x in d):
            raise NotDivisible(f"{g} does not divide {f}")
        m = c / gc
        q[d] = m
        for te, tc in gterms:
            pe = tuple(a + b for a, b in zip(te, d))
            v = rem.get(pe)
            v = -m * tc if v is None else v - m * tc
            if v:
                rem[pe] = v
            else:
                rem.pop(pe, None)
    return Polynomial(ring, q)


def divides(g: Polynomial, f: Polynomial) -> bool:
    try:
        exact_divide(f, g)
    except NotDivisible:
        return False
    return True


def normalize(f: Polynomial) -> Polynomial:
    """Scale to lex-leading coefficient 1."""
    if f.is_zero():
        return f
    return f.monic(LEX)


def _first_variable(*polys: Polynomial) -> int | None:
    n = polys[0].ring.ngens
    for i in range(n):
        for p in polys:
            if any(e[i] for e in p.terms):
                return i
    return None


def _content(f: Polynomial, i: int) -> Polynomial:
    coeffs = sorted(f.coefficients_in(i).values(), key=lambda p: len(p.terms))
    c = coeffs[0]
    for p in coeffs[1:]:
        if c.is_constant():
            break
        c = gcd(c, p)
    return normalize(c) if not c.is_constant() else f.ring.one


def _primitive(f: Polynomial, i: int) -> Polynomial:
    c = _content(f, i)
    return f if c.is_constant() else exact_divide(f, c)


def pseudo_remainder(a: Polynomial, b: Polynomial, i: int) -> Polynomial:
    db = b.degree(i)
    lb = b.coefficients_in(i)[db]
    var = a.ring.gens()[i]
    r = a
    while not r.is_zero() and r.degree(i) >= db:
        dr = r.degree(i)
        lr = r.coefficients_in(i)[dr]
        r = r * lb - lr * b * var ** (dr - db)
    return r


def gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero():
        return normalize(g)
    if g.is_zero():
        return normalize(f)
    if f.is_constant() or g.is_constant():
        return f.ring.one
    i = _first_variable(f, g)
    df, dg = f.degree(i), g.degree(i)
    if df == 0:
        return gcd(f, _content(g, i))
    if dg == 0:
        return gcd(_content(f, i), g)
    cf, cg = _content(f, i), _content(g, i)
    c = gcd(cf, cg)
    a = f if cf.is_constant() else exact_divide(f, cf)
    b = g if cg.is_constant() else exact_divide(g, cg)
    if a.degree(i) < b.degree(i):
        a, b = b, a
    while not b.is_zero():
        r = pseudo_remainder(a, b, i)
        a = b
        if r.is_zero():
            b = r
        elif r.degree(i) == 0:
            a = f.ring.one
            break
        else:
            b = _primitive(r, i)
    if not a.is_constant():
        a = _primitive(a, i)
    return normalize(c * a)


def lcm(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero() or g.is_zero():
        return f.ring.zero
    return normalize(exact_divide(f * g, gcd(f, g)))
