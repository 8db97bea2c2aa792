from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from cuspcalc.algebra import (
    DEGREVLEX,
    LEX,
    OMEGA,
    QQ,
    QQ_OMEGA,
    FractionField,
    PolyRing,
    QOmega,
    divide_with_remainder,
    parse_polynomial,
    parse_scalar,
    resultant,
    translate,
)
from cuspcalc.algebra.gcd import divides, exact_divide, gcd
from cuspcalc.algebra.numberfield import AlgebraicRootField
from cuspcalc.algebra.univariate import squarefree_decomposition, squarefree_part, udivmod
from cuspcalc.errors import DimensionMismatch, DivisionByZeroPolynomial, ParseError, UnknownVariable, ZeroDegreeInput
from cuspcalc.numeric import Root, algebraic_root, polynomial_roots

from conftest import from_sympy, sym_coeff, to_sympy

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
qomegas = st.builds(QOmega, fractions, fractions)

R2 = PolyRing(("x", "y"))


def polys(ring=R2, max_terms=5, max_deg=3):
    exps = st.tuples(*[st.integers(0, max_deg)] * ring.ngens)
    return st.dictionaries(exps, st.integers(-6, 6), max_size=max_terms).map(
        lambda d: ring.from_terms({e: Fraction(c) for e, c in d.items() if c})
    )


# -- Q(omega) -------------------------------------------------------------------------------


def test_omega_relation():
    assert OMEGA * OMEGA + OMEGA + 1 == 0
    assert OMEGA**3 == 1
    assert OMEGA**-1 == OMEGA * OMEGA


def test_i_sqrt3_squares_to_minus_three():
    s = 2 * OMEGA + 1
    assert s * s == -3


@given(qomegas, qomegas, qomegas)
def test_qomega_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if b:
        assert (a / b) * b == a


@given(qomegas, qomegas)
def test_qomega_matches_complex_embedding(a, b):
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-9 * (1 + abs(complex(a)) * abs(complex(b)))
    assert sp.simplify(sym_coeff(a * b) - sym_coeff(a) * sym_coeff(b)) == 0


@given(qomegas)
def test_qomega_norm_is_rational_and_multiplicative(a):
    assert a.norm() == (a * a.conjugate()).a
    assert (a * a.conjugate()).b == 0


def test_qomega_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QOmega(1, 1) / QOmega(0, 0)


# -- parsing -----------------------------------------------------------------------------------


def test_parse_and_print_round_trip():
    f = parse_polynomial("x^2 - y^3 - z^2 + w^3")
    assert f.ring.variables == ("x", "y", "z", "w")
    assert parse_polynomial(str(f), f.ring) == f


def test_parse_omega_coefficients():
    f = parse_polynomial("x - omega*y + (1 + 2*omega)")
    assert f.ring.field == QQ_OMEGA
    assert f.constant_coeff() == QOmega(1, 2)


def test_parse_scalar():
    assert parse_scalar("-3/4") == Fraction(-3, 4)
    assert parse_scalar("1 + 2*omega") == QOmega(1, 2)


@pytest.mark.parametrize("text", ["x +* y", "x^", "(x + y", "x ^ y", "3 $ x"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_polynomial(text)


def test_parse_unknown_variable_in_fixed_ring():
    with pytest.raises(ParseError):
        parse_polynomial("x + q", R2)


# -- polynomial arithmetic against sympy ------------------------------------------------------


@given(polys(), polys())
def test_ring_operations_agree_with_sympy(f, g):
    assert from_sympy(to_sympy(f) * to_sympy(g), R2) == f * g
    assert from_sympy(to_sympy(f) - to_sympy(g), R2) == f - g


@given(polys())
def test_derivative_agrees_with_sympy(f):
    x, y = sp.symbols("x y")
    assert from_sympy(sp.diff(to_sympy(f), x), R2) == f.derivative("x")


def test_derivative_examples():
    R = PolyRing(("X", "Y", "U", "V"))
    assert R("X^2 + Y^2 - U^2 - V^2").derivative("X") == R("2*X")
    S = PolyRing(("lam", "mu", "nu", "sigma", "x", "y", "z", "w"))
    F = S("x^2 - y^3 - z^2 + w^3 + lam + mu*y - nu*w + sigma*y*w")
    assert F.derivative("w") == S("3*w^2 - nu + sigma*y")


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        R2("x").derivative("t")


def test_rings_must_match():
    with pytest.raises(DimensionMismatch):
        R2("x") + PolyRing(("u", "v"))("u")


def test_translate_moves_point_to_origin():
    R = PolyRing(("X", "Y"))
    f = R("X^2 - Y^3 - Y^2")
    g = translate(f, (0, -1))
    assert g.constant_coeff() == 0
    # Y -> Y - 1 expands -(Y-1)^3 - (Y-1)^2
    assert g == R("X^2 - Y^3 + 2*Y^2 - Y")


def test_translate_full_fiber_equation():
    # X^2 - Y^3 - Y^2 - t(X^3 + Y^3 + 1) at (0, -1, -1/3), expanded independently
    R = PolyRing(("X", "Y", "t"))
    f = R("X^2 - Y^3 - Y^2 - t*(X^3 + Y^3 + 1)")
    g = translate(f, (0, -1, Fraction(-1, 3)))
    X, Y, t = sp.symbols("X Y t")
    expected = sp.expand((X**2 - Y**3 - Y**2 - t * (X**3 + Y**3 + 1)).subs({Y: Y - 1, t: t - sp.Rational(1, 3)}, simultaneous=True))
    assert from_sympy(expected, R) == g
    assert g == R("1/3*X^3 - 2/3*Y^3 + X^2 + Y^2 - t*(X^3 + Y^3 - 3*Y^2 + 3*Y)")


def test_translate_with_omega_point():
    f = R2("x^3 - 1")
    assert translate(f, (OMEGA, 0)).constant_coeff() == 0


# -- gcd, division, square-free parts ---------------------------------------------------------


@given(polys(max_terms=4, max_deg=2), polys(max_terms=4, max_deg=2), polys(max_terms=3, max_deg=2))
def test_gcd_divides_both_and_matches_sympy(a, b, c):
    f, g = a * c, b * c
    if f.is_zero() or g.is_zero():
        return
    d = gcd(f, g)
    assert divides(d, f) and divides(d, g)
    expected = sp.gcd(to_sympy(f), to_sympy(g))
    ratio = sp.simplify(to_sympy(d) / expected)
    assert ratio.is_number and ratio != 0


def test_exact_divide():
    f = R2("(x + y)*(x - 2*y + 1)")
    assert exact_divide(f, R2("x + y")) == R2("x - 2*y + 1")


def test_univariate_division():
    R = PolyRing(("t",))
    q, r = udivmod(R("t^3 + 2*t + 5"), R("t - 1"))
    assert r == R("8") and q == R("t^2 + t + 3")


def test_division_by_zero_polynomial():
    with pytest.raises(DivisionByZeroPolynomial):
        divide_with_remainder(R2("x"), R2.zero, "x")


def test_remainder_of_r1_by_r2():
    R = PolyRing(("lam", "mu", "nu", "sigma", "y"))
    R1 = R("27*y^4 - 18*mu*y^2 + sigma^3*y + 3*mu^2 - nu*sigma^2")
    R2_ = R("3*sigma*y^3 - 6*nu*y^2 + mu*sigma*y + 2*mu*nu + 3*lam*sigma")
    _, rem = divide_with_remainder(R1, R2_, "y")
    lam, mu, nu, sigma, y = sp.symbols("lam mu nu sigma y")
    _, expected = sp.div(to_sympy(R1), to_sympy(R2_), y)
    c2 = sp.Poly(expected, y).coeff_monomial(y**2)
    assert sp.simplify(c2 - 27 * (4 * nu**2 - mu * sigma**2) / sigma**2) == 0
    got = rem.coeff((2,))
    assert sp.simplify(to_sympy(got.num) / to_sympy(got.den) - c2) == 0


def test_squarefree():
    R = PolyRing(("t",))
    f = R("(t - 1)^3*(t + 2)^2*(t^2 + 1)")
    assert squarefree_part(f) == R("(t - 1)*(t + 2)*(t^2 + 1)")
    mults = sorted(m for _, m in squarefree_decomposition(f))
    assert mults == [1, 2, 3]


def test_rational_function_field():
    K = FractionField(("a", "b"))
    a, b = K.gens()
    r = (a * a - b * b) / (a - b)
    assert r == a + b
    assert r.is_polynomial()


# -- resultants -----------------------------------------------------------------------------------


@given(polys(max_terms=4, max_deg=3), polys(max_terms=4, max_deg=3))
def test_resultant_agrees_with_sympy(f, g):
    if f.degree("x") <= 0 or g.degree("x") <= 0:
        return
    x, y = sp.symbols("x y")
    expected = sp.resultant(to_sympy(f), to_sympy(g), x)
    assert from_sympy(expected, R2) == resultant(f, g, "x")


@given(polys(max_terms=4, max_deg=3), polys(max_terms=4, max_deg=3))
def test_resultant_swap_sign(f, g):
    m, n = f.degree("x"), g.degree("x")
    if m <= 0 or n <= 0:
        return
    assert resultant(f, g, "x") == resultant(g, f, "x").scale((-1) ** (m * n))


def test_resultant_needs_the_variable():
    with pytest.raises(ZeroDegreeInput):
        resultant(R2("y + 1"), R2("y^2"), "x")


def test_resultant_of_critical_equations_reproduces_r1():
    # eliminating w between 3y^2 - sigma*w - mu and 3w^2 + sigma*y - nu
    R = PolyRing(("lam", "mu", "nu", "sigma", "y", "w"))
    g1 = R("3*y^2 - sigma*w - mu")
    g2 = R("3*w^2 + sigma*y - nu")
    res = resultant(g1, g2, "w")
    R1 = R("27*y^4 - 18*mu*y^2 + sigma^3*y + 3*mu^2 - nu*sigma^2")
    # direct substitution w = (3y^2 - mu)/sigma gives R1 / sigma^2
    assert res == R1


# -- number fields ----------------------------------------------------------------------------------


def test_algebraic_root_field_arithmetic():
    K = AlgebraicRootField([-2, 0, 0, 1], 2 ** (1 / 3))  # theta^3 = 2
    th = K.gen
    assert th**3 == 2
    assert (th * th) * th.inverse() == th
    assert abs(complex(th) - 2 ** (1 / 3)) < 1e-12
    assert str(th**2 + 1) == "theta^2 + 1"


def test_algebraic_field_splits_reducible_modulus():
    # (t^2 - 2)(t - 3) with theta the root near 1.414
    K = AlgebraicRootField([6, -2, -3, 1], 1.4142)
    th = K.gen
    assert th * th == 2
    assert th - 3 != 0
    assert K.minimal_polynomial() == (Fraction(-2), Fraction(0), Fraction(1))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_number_field_agrees_with_sympy(a, b):
    # theta a root of t^4 - 3t + 1, compared through its minimal polynomial
    K = AlgebraicRootField([1, -3, 0, 0, 1], 0.3368)
    th = K.gen
    x = sum((th**i * c for i, c in enumerate(a)), K.zero)
    y = sum((th**i * c for i, c in enumerate(b)), K.zero)
    t = sp.Symbol("t")
    modulus = t**4 - 3 * t + 1
    ex = sum(c * t**i for i, c in enumerate(a))
    ey = sum(c * t**i for i, c in enumerate(b))
    prod = sp.rem(sp.expand(ex * ey), modulus, t)
    got = sum(sp.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate((x * y).coeffs))
    assert sp.expand(got - prod) == 0
    if y:
        assert (x / y) * y == x


def test_algebraic_root_from_numeric_root():
    R = PolyRing(("t",))
    p = R("t^5 - t - 1")
    roots = polynomial_roots(p)
    assert not any(r.is_exact for r in roots)
    z = algebraic_root(p, roots[0])
    ring = PolyRing(("t",), z.field)
    assert p.change_ring(ring).evaluate([z]) == 0


def test_exact_roots_recognized():
    R = PolyRing(("t",))
    roots = polynomial_roots(R("(t - 1/3)*(t^2 + t + 1)*(t^2 - 2)"))
    exact = {str(r.exact) for r in roots if r.is_exact}
    assert exact == {"1/3", "omega", "-1 - omega"}
    assert len(roots) == 5
    assert all(isinstance(r, Root) for r in roots)


def test_orders_compare():
    e1, e2 = (2, 0), (1, 2)
    assert LEX.key(e1) > LEX.key(e2)
    assert DEGREVLEX.key(e2) > DEGREVLEX.key(e1)
    assert QQ.convert(3) == 3


# -- invariants ------------------------------------------------------------------------------

T1 = PolyRing(("t",))


@given(polys(T1, max_terms=6, max_deg=6), polys(T1, max_terms=4, max_deg=4))
def test_division_reconstructs_dividend(f, g):
    if g.is_zero():
        return
    q, r = divide_with_remainder(f, g, "t")
    assert q * g + r == f
    assert r.is_zero() or r.degree("t") < g.degree("t")


def test_division_reconstructs_on_random_pairs():
    import random

    rng = random.Random(7)
    for _ in range(200):
        f = T1.from_terms({(i,): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for i in range(rng.randint(0, 7))})
        g = T1.from_terms({(i,): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for i in range(rng.randint(1, 4))})
        if g.is_zero():
            continue
        q, r = divide_with_remainder(f, g, "t")
        assert q * g + r == f


@given(polys(), st.tuples(fractions, fractions))
def test_translate_round_trip(f, p):
    assert translate(translate(f, p), tuple(-c for c in p)) == f


@given(polys(max_deg=4))
def test_mixed_partials_commute(f):
    assert f.derivative("x").derivative("y") == f.derivative("y").derivative("x")
