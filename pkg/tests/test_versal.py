import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from cuspcalc.algebra import QOmega
from cuspcalc.algebra.fields import QQ_OMEGA
from cuspcalc.germ import GermClass
from cuspcalc.reproduce import LOCUS_CONDITIONS, _locus_solutions, _s_point, factored_samples
from cuspcalc.versal import (
    KuranishiPoint,
    LocusFlag,
    SFiberType,
    classify_S_deformation,
    critical_system,
    cubic_curve_map,
    deformed_fiber_singularities,
    eliminated_pair,
    factored_family,
    factored_family_analysis,
    i_map,
    kuranishi_family,
    l_form,
    on_curve,
    orthogonality_tangent,
    predicted_points,
    three_node_locus,
)
from cuspcalc.versal import PARAM_RING

from conftest import OMEGA_SYM, sym_coeff, to_sympy

OMEGA = QOmega(0, 1)
W = complex(-0.5, 3**0.5 / 2)


@pytest.fixture(scope="module")
def locus():
    return three_node_locus()


def test_critical_system_matches_derivatives():
    F = to_sympy(kuranishi_family())
    x, y, z, w, lam, mu, nu, sigma = sp.symbols("x y z w lam mu nu sigma")
    # x and z derivatives are 2x and -2z, so the remaining equations live in (y, w)
    assert sp.expand(sp.diff(F, x) - 2 * x) == 0
    eqs = [to_sympy(e) for e in critical_system()]
    assert sp.expand(eqs[0] + sp.diff(F, y)) == 0
    assert sp.expand(eqs[1] - sp.diff(F, w)) == 0
    # Euler relation: 3F - y F_y - w F_w restricted to x = z = 0
    euler = 3 * F - y * sp.diff(F, y) - w * sp.diff(F, w)
    assert sp.expand(euler.subs({x: 0, z: 0}) - eqs[2]) == 0


def test_eliminated_pair_by_substitution():
    y, w, lam, mu, nu, sigma = sp.symbols("y w lam mu nu sigma")
    e1, e2, e3 = (to_sympy(e) for e in critical_system())
    r1, r2 = (to_sympy(e) for e in eliminated_pair())
    ws = (3 * y**2 - mu) / sigma
    assert sp.simplify(e2.subs(w, ws) * sigma**2 - r1) == 0
    assert sp.simplify(e3.subs(w, ws) * sigma - r2) == 0


def test_locus_conditions_against_sympy_remainder(locus):
    y, lam, mu, nu, sigma = sp.symbols("y lam mu nu sigma")
    r1, r2 = (to_sympy(e) for e in eliminated_pair())
    rem = sp.rem(sp.Poly(r1, y), sp.Poly(r2, y))
    coeffs = [sp.together(rem.coeff_monomial(y**k)) for k in (2, 1, 0)]
    for c, ours, text in zip(coeffs, locus.conditions, LOCUS_CONDITIONS):
        num = sp.numer(sp.factor(c))
        ref = to_sympy(PARAM_RING(text))
        ratio = sp.simplify(num / ref)
        # equal up to a monomial factor in sigma and a constant
        assert ratio.free_symbols <= {sigma}
        assert to_sympy(ours) == sp.expand(ref)


def test_locus_solutions(locus):
    assert len(locus.solutions) == 4
    flags = [s.flag for s in locus.solutions]
    assert flags.count(LocusFlag.THREE_NODES) == 1
    expected = {tuple(QQ_OMEGA.convert(c) for c in s) for s in _locus_solutions()}
    got = set()
    for s in locus.solutions:
        lam, mu, mnu, _ = s.point.coefficient_tuple()
        got.add((QQ_OMEGA.convert(lam.coeff((3,))), QQ_OMEGA.convert(mu.coeff((2,))), QQ_OMEGA.convert(mnu.coeff((2,)))))
    assert got == expected


def test_locus_solutions_satisfy_conditions_numerically(locus):
    for s in locus.solutions:
        for sval in (1, 2, -3):
            vals = [complex(QQ_OMEGA.convert(c.evaluate([sval]))) for c in s.point.as_tuple()]
            for cond in locus.conditions:
                assert abs(cond.evaluate_complex(vals)) < 1e-9


def test_three_node_branch_fibers(locus):
    branch = next(s for s in locus.solutions if s.flag is LocusFlag.THREE_NODES)
    for sval in (1, 3, Fraction(1, 2)):
        fib = deformed_fiber_singularities(branch.point.at(sval))
        assert fib.classes == [GermClass.NODE] * 3
        assert fib.all_exact
    assert on_curve(branch.point.at(5), locus.curve_ideal)
    assert not on_curve(KuranishiPoint(1, 0, 0, 1), locus.curve_ideal)


def test_trivial_branches_have_one_singular_point(locus):
    for s in locus.solutions:
        if s.flag is LocusFlag.TRIVIAL:
            fib = deformed_fiber_singularities(s.point.at(2))
            assert len(fib.singular_points) == 1


def test_branch_tangent_is_sigma_direction(locus):
    for s in locus.solutions:
        assert orthogonality_tangent(s) == (0, 0, 0, 1)


@pytest.mark.parametrize("mu", (-9, 0, 3))
@pytest.mark.parametrize("nu", (-9, 0, 3))
def test_s_slice_grid(mu, nu):
    lam = _s_point(mu, nu)
    rep = classify_S_deformation(lam, mu, nu)
    if mu and nu:
        expected = SFiberType.NODE
    elif mu == 0 and nu == 0:
        expected = SFiberType.CUSP
    else:
        expected = SFiberType.MIXED
    exact_types = [t for t, p in zip(rep.types, rep.fiber.singular_points) if p.exact]
    assert exact_types and all(t is expected for t in exact_types)


def test_s_slice_generic_lambda_is_smooth():
    rep = classify_S_deformation(1, 3, 3)
    assert rep.types == ()


# -- the factored family -----------------------------------------------------------------


def _complex(q) -> complex:
    q = QQ_OMEGA.convert(q)
    return float(q.a) + float(q.b) * W


def _complex_prediction(a, b, c):
    """Singular points from the closed form, evaluated in complex floating point."""
    a, b, c = (_complex(v) for v in (a, b, c))
    A = -0.5 + 1j * 3**0.5 / 6
    Abar = A.conjugate()
    L = a + W * b + W * W * c
    if abs(L) < 1e-12:
        return [(A * b + Abar * c, 1j / 3**0.5 * (c - b))]
    M = a + W * W * b + W * c
    N = b * c + W * a * c + W * W * a * b
    out = []
    for v in (-Abar * (a - b), -(a - c) / (3 * Abar), (b - c) / (1j * 3**0.5)):
        out.append(((3 * v * v - 2 * M * v + N) / L, v))
    return out


def _gradient_yw(a, b, c, y, w):
    a, b, c = (_complex(v) for v in (a, b, c))
    f1, f2, f3 = y - w + a, y - W * w + b, y - W * W * w + c
    Fy = -(f2 * f3 + f1 * f3 + f1 * f2)
    Fw = -(-f2 * f3 - W * f1 * f3 - W * W * f1 * f2)
    return abs(Fy), abs(Fw), abs(f1 * f2 * f3)


OFF, ON = factored_samples(seed=99, off=6, on=4)


@pytest.mark.parametrize("abc", OFF)
def test_factored_off_plane(abc):
    rep = factored_family_analysis(*abc)
    assert not rep.on_plane
    assert [p.germ_class for p in rep.points] == [GermClass.NODE] * 3
    assert rep.matches_prediction
    for y, w in _complex_prediction(*abc):
        assert max(_gradient_yw(*abc, y, w)) < 1e-9
    got = [(_complex(p.coordinates[1]), _complex(p.coordinates[3])) for p in rep.points]
    ref = _complex_prediction(*abc)
    for y, w in got:
        assert min(abs(y - y2) + abs(w - w2) for y2, w2 in ref) < 1e-9


@pytest.mark.parametrize("abc", ON)
def test_factored_on_plane(abc):
    rep = factored_family_analysis(*abc)
    assert rep.on_plane and l_form(*abc) == 0
    assert [p.germ_class for p in rep.points] == [GermClass.CUSP]
    (y, w), = _complex_prediction(*abc)
    assert max(_gradient_yw(*abc, y, w)) < 1e-9


def test_specific_point_on_plane():
    rep = factored_family_analysis(-OMEGA, 1, 0)
    assert rep.on_plane
    assert [p.germ_class for p in rep.points] == [GermClass.CUSP]
    (_, y, _, w), = predicted_points(-OMEGA, 1, 0)
    assert rep.points[0].coordinates == (0, y, 0, w)


def test_cubic_curve_map_example():
    pt = cubic_curve_map((OMEGA, 1, OMEGA * OMEGA))
    assert pt.lam == -27 and pt.mu == 0 and pt.nu == 0
    assert pt.sigma == -9 * OMEGA
    assert pt.sigma**3 == 27 * pt.lam


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=3, max_size=3))
def test_cubic_curve_map_lands_on_curve(abc):
    a = [QOmega(p, q) for p, q in abc]
    pt = cubic_curve_map(a)
    assert pt.mu == 0 and pt.nu == 0
    assert pt.sigma**3 == 27 * pt.lam


def test_cubic_curve_map_random_samples():
    rng = random.Random(5)
    for _ in range(20):
        a = [QOmega(Fraction(rng.randint(-9, 9), rng.randint(1, 4)), rng.randint(-9, 9)) for _ in range(3)]
        pt = cubic_curve_map(a)
        assert (pt.mu, pt.nu) == (0, 0) and pt.sigma**3 == 27 * pt.lam


def test_i_map_reproduces_family():
    # offsets s*(omega, 1, omega^2) kill the y^2 and w^2 terms, so the expansion is F_L at L = i(...)
    s = QOmega(Fraction(2, 3), -1)
    a, b, c = s * OMEGA, s, s * OMEGA * OMEGA
    F = factored_family(a, b, c)
    G = kuranishi_family(i_map(a, b, c))
    assert F == G.change_ring(F.ring)


def test_sympy_check_of_factored_expansion():
    x, y, z, w = sp.symbols("x y z w")
    al, be, ga = sp.Integer(2), sp.Rational(1, 2), sp.Integer(-1)
    F = x**2 - z**2 - (y - w + al) * (y - OMEGA_SYM * w + be) * (y - OMEGA_SYM**2 * w + ga)
    ours = to_sympy(factored_family(al.p, Fraction(1, 2), -1))
    assert sp.simplify(sp.expand(F - ours)) == 0
    assert sym_coeff(OMEGA) == OMEGA_SYM


def test_rational_singular_point_found_exactly():
    # y = 1, w = 2 solves the critical system for (lam, mu, nu, sigma) = (16, 1, 13, 1)
    fib = deformed_fiber_singularities(KuranishiPoint(16, 1, 13, 1))
    exact = [p for p in fib.singular_points if p.exact]
    assert [tuple(QQ_OMEGA.convert(c) for c in p.coordinates) for p in exact] == [(0, 1, 0, 2)]
    assert exact[0].germ_class is GermClass.NODE


# -- invariants ------------------------------------------------------------------------------


def test_at_most_three_singular_points_on_random_parameters():
    # random points are almost always smooth, so half of them are forced to be
    # singular at a chosen (0, y0, 0, w0)
    rng = random.Random(11)
    singular = 0
    for i in range(100):
        if i % 2:
            pt = KuranishiPoint(*(Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(4)))
        else:
            y0, w0, s = (Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(3))
            mu, nu = 3 * y0 * y0 - s * w0, 3 * w0 * w0 + s * y0
            pt = KuranishiPoint(y0**3 - w0**3 - mu * y0 + nu * w0 - s * y0 * w0, mu, nu, s)
        n = len(deformed_fiber_singularities(pt).singular_points)
        assert n <= 3
        singular += n > 0
    assert singular >= 50


@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
def test_at_most_two_singular_points_on_s_slice(lam, mu, nu):
    assert len(classify_S_deformation(lam, mu, nu).types) <= 2


@pytest.mark.parametrize("sval", (1, 3, Fraction(-2, 5)))
def test_three_node_coordinates(locus, sval):
    branch = next(s for s in locus.solutions if s.flag is LocusFlag.THREE_NODES)
    fib = deformed_fiber_singularities(branch.point.at(sval))
    ys = [QQ_OMEGA.convert(p.coordinates[1]) for p in fib.singular_points]
    expected = [QQ_OMEGA.convert(-Fraction(sval, 3)) * u for u in (QOmega(1, 0), OMEGA, OMEGA * OMEGA)]
    assert sorted(ys, key=str) == sorted(expected, key=str)
    assert sum(ys, QQ_OMEGA.zero) == 0
