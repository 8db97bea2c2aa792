import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cuspcalc.algebra import PolyRing, QOmega
from cuspcalc.errors import NonIsolated, PointNotOnVariety
from cuspcalc.germ import (
    GermClass,
    classify_fiber_product,
    classify_fiber_product_numeric,
    classify_germ,
    classify_numeric,
    fiber_product_germ,
    germ_at,
    is_weighted_homogeneous,
    jacobian_ideal,
    milnor_number,
    smoothness_check,
    t1_basis,
    tjurina_ideal,
    tyurina_number,
    versal_family,
    weierstrass_node_germ,
    weierstrass_node_germ_points,
)
from cuspcalc.reproduce import CUSP, NODE, SAITO_SUITE, random_linear_change
from cuspcalc.standard_basis import truncation_oracle

R4 = PolyRing(("x", "y", "z", "w"))
X4 = PolyRing(("X", "Y", "U", "V"))
R2 = PolyRing(("x", "y"))


def test_cusp_invariants():
    f = R4(CUSP)
    assert milnor_number(f) == 4
    assert tyurina_number(f) == 4
    assert sorted(str(m) for m in t1_basis(f)) == sorted(["1", "y", "w", "y*w"])
    rep = classify_germ(f)
    assert rep.germ_class is GermClass.CUSP
    assert rep.corank == 2 and rep.milnor == 4 and rep.tyurina == 4


def test_node_invariants():
    rep = classify_germ(R4(NODE))
    assert rep.germ_class is GermClass.NODE
    assert (rep.milnor, rep.tyurina, rep.corank) == (1, 1, 0)


def test_smooth_germ():
    assert classify_germ(R4("x + y^2")).germ_class is GermClass.SMOOTH


def test_origin_off_hypersurface():
    with pytest.raises(PointNotOnVariety):
        classify_germ(R4("1 + x^2"))


@pytest.mark.parametrize(
    "text, cls",
    [
        ("X^2 - U^2 - Y^3 + V^3", GermClass.CUSP),
        ("V*(X^2 + Y^2) - Y*(U^2 + V^2)", GermClass.OTHER),
        ("X^2 + Y^2 + U^2 + V^2", GermClass.NODE),
        ("X*Y - U*V", GermClass.NODE),
        ("X^2 - U^2 - Y^3", GermClass.OTHER),  # non-isolated along V
        ("X^2 + U^2 + Y^3 + V^4", GermClass.OTHER),  # corank 2 with mu = 6
    ],
)
def test_classification_classes(text, cls):
    assert classify_germ(X4(text), compute_invariants=False).germ_class is cls


def test_cusp_needs_nondegenerate_cubic():
    # corank 2 and mu = 4 is only possible for the cusp, but a degenerate cubic is rejected
    rep = classify_germ(X4("X^2 + U^2 + Y^3 + V^3"))
    assert rep.germ_class is GermClass.CUSP
    rep = classify_germ(X4("X^2 + U^2 + Y^2*V"))
    assert rep.germ_class is GermClass.OTHER


def test_non_isolated_reported():
    f = R4("x^2 - y^3 - z^2")
    rep = classify_germ(f, probe_order=6)
    assert rep.germ_class is GermClass.OTHER and rep.milnor is None
    assert rep.notes
    with pytest.raises(NonIsolated):
        t1_basis(f)


@pytest.mark.parametrize("seed", range(3))
def test_linear_change_invariance(seed):
    rng = random.Random(seed)
    for text, ring in ((CUSP, R4), (NODE, R4), ("x^2 - y^3", R2)):
        f = ring(text)
        g = random_linear_change(rng, f)
        assert (milnor_number(g), tyurina_number(g)) == (milnor_number(f), tyurina_number(f))
        assert classify_germ(g).germ_class == classify_germ(f).germ_class


@given(st.integers(0, 10**6))
def test_linear_change_invariance_plane(seed):
    f = R2("x^3 + y^4")
    g = random_linear_change(random.Random(seed), f)
    assert milnor_number(g) == 6 and tyurina_number(g) == 6


@pytest.mark.parametrize("text, names", SAITO_SUITE)
def test_saito_quasi_homogeneity(text, names):
    f = PolyRing(names)(text)
    mu = milnor_number(f)
    # independent mu and tau from the truncation oracle
    assert truncation_oracle(jacobian_ideal(f), 14)[0] == mu
    tau = truncation_oracle(tjurina_ideal(f), 14)[0]
    assert tau == tyurina_number(f)
    assert (mu == tau) == bool(is_weighted_homogeneous(f))


def test_weights_of_cusp():
    wh = is_weighted_homogeneous(R4(CUSP))
    assert wh.weights == (Fraction(1, 2), Fraction(1, 3), Fraction(1, 2), Fraction(1, 3))
    assert wh.degree == 1
    assert not is_weighted_homogeneous(R2("x^4 + y^5 + x^2*y^3"))
    assert not is_weighted_homogeneous(R2("1 + x"))


def test_versal_family():
    F = versal_family(R4(CUSP), ("a", "b", "c", "d"))
    assert F.ring.ngens == 4
    assert len(F.terms) == 8
    with pytest.raises(ValueError):
        versal_family(R4(CUSP), ("a",))


# -- fiber products -----------------------------------------------------------------------

F3 = PolyRing(("x", "y", "t"))
G3 = PolyRing(("u", "v", "t"))


def test_fiber_product_of_cuspidal_fibers_is_cusp():
    # local Weierstrass equations at a root with A(t0) = 0
    f, g = F3("y^2 - x^3 - t"), G3("v^2 - u^3 - t")
    fp, rep = classify_fiber_product(f, g)
    assert fp.route == "resultant"
    assert rep.germ_class is GermClass.CUSP


def test_fiber_product_of_nodal_fibers_is_node():
    # A(t0) != 0: locally y^2 = x^2 + t after a coordinate change
    f, g = F3("y^2 - x^2 - x^3 - t"), G3("v^2 - u^2 - t")
    _, rep = classify_fiber_product(f, g)
    assert rep.germ_class is GermClass.NODE


def test_fiber_product_series_route():
    f, g = F3("y^2 - x^3 - t - t^2"), G3("v^2 - u^3 - t + t^3")
    fp, rep = classify_fiber_product(f, g)
    assert fp.route == "series"
    assert rep.germ_class is GermClass.CUSP
    direct = fiber_product_germ(f, g, order=4)
    assert direct.polynomial.truncate(3) == fp.polynomial.truncate(3)


def test_fiber_product_with_singular_factor():
    f, g = F3("y^2 - x^3 - t^2"), G3("v^2 - u^2 - t")
    _, rep = classify_fiber_product(f, g)
    assert rep.germ_class is GermClass.OTHER
    assert any("non-isolated" in n for n in rep.notes)


def test_fiber_product_off_variety():
    with pytest.raises(PointNotOnVariety):
        fiber_product_germ(F3("y^2 - x^3 - t + 1"), G3("v^2 - u^3 - t"))


def test_numeric_fiber_product_node():
    f, g = F3("y^2 - x^2 - t"), G3("v^2 - u^2 - t")
    rep = classify_fiber_product_numeric(f, g, {"x": 0, "y": 0, "u": 0, "v": 0, "t": 0})
    assert rep.germ_class is GermClass.NODE and not rep.exact
    rep = classify_fiber_product_numeric(F3("y^2 - x^3 - t"), G3("v^2 - u^3 - t"), {"x": 0, "y": 0, "u": 0, "v": 0, "t": 0})
    assert rep.germ_class is GermClass.OTHER


def test_classify_numeric():
    f = R4(NODE)
    assert classify_numeric(f, (0, 0, 0, 0)).germ_class is GermClass.NODE
    assert classify_numeric(R4(CUSP), (0, 0, 0, 0)).germ_class is GermClass.OTHER
    assert classify_numeric(R4("x^2 + y"), (0, 0, 0, 0)).germ_class is GermClass.SMOOTH
    with pytest.raises(PointNotOnVariety):
        classify_numeric(f, (1, 0, 0, 0))


def test_germ_at_translates():
    f = R2("(x - 1)^2 - (y - 2)^3")
    assert germ_at(f, (1, 2)) == R2("x^2 - y^3")
    assert classify_germ(germ_at(f, (1, 2))).milnor == 2


# -- smoothness -----------------------------------------------------------------------------


def test_smoothness_exact():
    R = PolyRing(("x", "y", "z"))
    res = smoothness_check([R("x^2 + y^2 + z^2 - 1")], (1, 0, 0))
    assert res.smooth and res.exact and str(res) == "Smooth"
    res = smoothness_check([R("x^2 + y^2 - z^2")], (0, 0, 0))
    assert not res.smooth and res.corank == 1 and str(res) == "SingularOfCorank(1)"


def test_smoothness_complete_intersection():
    R = PolyRing(("x", "y", "z"))
    system = [R("z"), R("x^2 - y^3")]
    assert smoothness_check(system, {"x": 0, "y": 0, "z": 0}).corank == 1
    assert smoothness_check(system, (1, 1, 0)).smooth


def test_smoothness_over_eisenstein_point():
    R = PolyRing(("x", "y"))
    w = QOmega(0, 1)
    res = smoothness_check([R("x^3 - 1")], (w, 0))
    assert res.exact and res.rank == 1 and res.smooth


def test_smoothness_numeric():
    R = PolyRing(("x", "y"))
    res = smoothness_check([R("x^2 + y^2 - 2")], (2**0.5, 0.0))
    assert res.smooth and not res.exact
    with pytest.raises(PointNotOnVariety):
        smoothness_check([R("x^2 + y^2 - 2")], (1.5, 0.0))


# -- the nodal germ and its sign-companion ---------------------------------------------------


@pytest.mark.parametrize("eta", [1, Fraction(-2, 3), QOmega(1, 2)])
def test_node_germ_sign_companion(eta):
    pts = weierstrass_node_germ_points(eta)
    assert [p.tag for p in pts] == ["origin", "sign-companion"]
    assert all(p.report.germ_class is GermClass.NODE for p in pts)
    assert pts[1].point == (0, -2 * eta, 0, -2 * eta)
    # the germ at the companion is the same germ with eta -> -eta
    F = weierstrass_node_germ(eta)
    assert germ_at(F, pts[1].point) == weierstrass_node_germ(-eta).change_ring(F.ring)


def test_node_germ_degenerates_to_cusp():
    (pt,) = weierstrass_node_germ_points(0)
    assert pt.tag == "origin" and pt.report.germ_class is GermClass.CUSP


@given(st.integers(-4, 4), st.integers(1, 4), st.integers(-3, 3))
def test_fiber_product_swap_symmetry(a, b, c):
    # two copies of the same local Weierstrass equation, with the factors swapped;
    # c != 0 sends the elimination through the series route
    eq = f"y^2 - x^3 - ({a})*x*t - ({b})*t - ({c})*t^2"
    f, g = F3(eq), G3(eq.replace("x", "u").replace("y", "v"))
    p = fiber_product_germ(f, g, order=6).polynomial
    q = fiber_product_germ(g, f, order=6).polynomial
    swapped = q.substitute({"u": p.ring.gen("x"), "v": p.ring.gen("y"), "x": p.ring.gen("u"), "y": p.ring.gen("v")}, p.ring)
    assert swapped == p or swapped == -p


def test_versal_family_at_zero_is_central():
    F = versal_family(R4(CUSP), ("a", "b", "c", "d"))
    zero = {n: 0 for n in ("a", "b", "c", "d")}
    central = R4.from_terms({e: c.specialize(zero) for e, c in F.terms.items()})
    assert central == R4(CUSP)
    assert classify_germ(central).germ_class is GermClass.CUSP
