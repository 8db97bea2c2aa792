"""Univariate division, gcd, square-free parts and the Sylvester resultant."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DivisionByZeroPolynomial, ZeroDegreeInput
from .fields import QQ
from .gcd import exact_divide
from .polynomial import PolyRing, Polynomial
from .ratfunc import split_parameters


def to_dense(f: Polynomial) -> list:
    """Coefficients c_0..c_n of a polynomial in a one-variable ring."""
    if f.ring.ngens != 1:
        raise ValueError("to_dense needs a univariate ring")
    if f.is_zero():
        return []
    n = f.total_degree()
    zero = f.ring.field.zero
    coeffs = [zero] * (n + 1)
    for (k,), c in f.terms.items():
        coeffs[k] = c
    return coeffs


def from_dense(ring: PolyRing, coeffs) -> Polynomial:
    return Polynomial(ring, {(k,): c for k, c in enumerate(coeffs) if c})


def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _divmod_dense(a: list, b: list, one):
    a = list(a)
    db = len(b) - 1
    inv = one / b[-1]
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [b[0] * 0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            continue
        m = c * inv
        q[k - db] = m
        for j in range(db + 1):
            a[k - db + j] = a[k - db + j] - m * b[j]
    return _trim(q), _trim(a[:db])


def udivmod(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial]:
    if g.is_zero():
        raise DivisionByZeroPolynomial("division by the zero polynomial")
    q, r = _divmod_dense(to_dense(f), to_dense(g), f.ring.field.one)
    return from_dense(f.ring, q), from_dense(f.ring, r)


def umonic(f: Polynomial) -> Polynomial:
    if f.is_zero():
        return f
    c = to_dense(f)
    return f.scale(f.ring.field.one / c[-1])


def ugcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd of two univariate polynomials over a field."""
    a, b = to_dense(f), to_dense(g)
    one = f.ring.field.one
    while b:
        _, r = _divmod_dense(a, b, one)
        a, b = b, r
    return umonic(from_dense(f.ring, a))


def uderivative(f: Polynomial) -> Polynomial:
    return f.derivative(0)


def squarefree_part(f: Polynomial) -> Polynomial:
    if f.is_zero() or f.total_degree() <= 0:
        return umonic(f)
    g = ugcd(f, uderivative(f))
    return umonic(udivmod(f, g)[0])


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: pairs (s_k, k) with f = lc * prod s_k^k, s_k squarefree and coprime."""
    out = []
    if f.total_degree() <= 0:
        return out
    df = uderivative(f)
    a = ugcd(f, df)
    b = udivmod(f, a)[0]
    c = udivmod(df, a)[0]
    d = c - uderivative(b)
    k = 1
    while b.total_degree() > 0:
        a = ugcd(b, d)
        if a.total_degree() > 0:
            out.append((umonic(a), k))
        b = udivmod(b, a)[0]
        c = udivmod(d, a)[0]
        d = c - uderivative(b)
        k += 1
    return out


def divide_with_remainder(f: Polynomial, g: Polynomial, var: str):
    """Quotient and remainder of ``f`` by ``g`` as polynomials in ``var``.

    Other variables become parameters of a rational function coefficient
    field.  The result lives in a one-variable ring over that field.
    """
    if g.is_zero():
        raise DivisionByZeroPolynomial("division by the zero polynomial")
    if f.ring.variables != g.ring.variables:
        f, g = f._coerce(g)
    f.ring.index(var)
    if f.ring.ngens == 1:
        return udivmod(f, g)
    if f.ring.field != QQ:
        raise TypeError("parameters are only supported over QQ")
    fu = split_parameters(f, (var,))
    gu = split_parameters(g, (var,))
    return udivmod(fu, gu)


def sylvester_matrix(f: Polynomial, g: Polynomial, var: str) -> list[list[Polynomial]]:
    i = f.ring.index(var)
    m, n = f.degree(i), g.degree(i)
    zero = f.ring.zero
    fc = f.coefficients_in(i)
    gc = g.coefficients_in(i)
    fco = [fc.get(k, zero) for k in range(m, -1, -1)]
    gco = [gc.get(k, zero) for k in range(n, -1, -1)]
    size = m + n
    rows = []
    for r in range(n):
        rows.append([zero] * r + fco + [zero] * (size - m - 1 - r))
    for r in range(m):
        rows.append([zero] * r + gco + [zero] * (size - n - 1 - r))
    return rows


def bareiss_determinant(matrix: list[list[Polynomial]], ring: PolyRing) -> Polynomial:
    """Fraction-free Gaussian elimination; every division is exact."""
    M = [row[:] for row in matrix]
    n = len(M)
    if n == 0:
        return ring.one
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if M[k][k].is_zero():
            for r in range(k + 1, n):
                if not M[r][k].is_zero():
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        pivot = M[k][k]
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                val = pivot * M[r][c] - M[r][k] * M[k][c]
                if prev.is_constant():
                    M[r][c] = val.scale(ring.field.one / prev.constant_coeff())
                else:
                    M[r][c] = exact_divide(val, prev)
        prev = pivot
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Sylvester resultant eliminating ``var``; the result stays in the input ring."""
    if f.ring != g.ring:
        f, g = f._coerce(g)
    i = f.ring.index(var)
    if f.is_zero() or g.is_zero():
        return f.ring.zero
    m, n = f.degree(i), g.degree(i)
    if m == 0 and n == 0:
        raise ZeroDegreeInput(f"neither input involves {var!r}")
    if m == 0:
        return f**n
    if n == 0:
        return g**m
    return bareiss_determinant(sylvester_matrix(f, g, var), f.ring)


@dataclass(frozen=True)
class ResultantReport:
    raw: Polynomial
    content: Polynomial
    primitive: Polynomial


def monomial_content(p: Polynomial, variables: tuple[str, ...] = ()) -> Polynomial:
    """Rational content times the largest monomial in ``variables`` dividing ``p``."""
    if p.is_zero():
        return p.ring.one
    idx = [p.ring.index(v) for v in variables]
    exp = [0] * p.ring.ngens
    for i in idx:
        exp[i] = min(e[i] for e in p.terms)
    content = p.ring.monomial(tuple(exp))
    if p.ring.field == QQ:
        from math import gcd as igcd, lcm as ilcm

        nums = [c.numerator for c in p.terms.values()]
        dens = [c.denominator for c in p.terms.values()]
        g = 0
        for x in nums:
            g = igcd(g, x)
        l = 1
        for x in dens:
            l = ilcm(l, x)
        lead = p.leading_coefficient()
        c = type(lead)(g, l) * (1 if lead > 0 else -1)
        content = content.scale(c)
    return content


def resultant_report(f: Polynomial, g: Polynomial, var: str, strip: tuple[str, ...] = ()) -> ResultantReport:
    raw = resultant(f, g, var)
    c = monomial_content(raw, strip)
    return ResultantReport(raw, c, exact_divide(raw, c) if not raw.is_zero() else raw)
