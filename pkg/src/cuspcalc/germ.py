"""Hypersurface germs at the origin: Milnor and Tyurina numbers, T^1,
classification, fiber-product germs and smoothness checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra.fields import QQ, QQ_OMEGA, QOmega, common_field
from .algebra.polynomial import PolyRing, Polynomial, translate
from .algebra.ratfunc import FractionField
from .algebra.univariate import monomial_content, resultant
from .errors import EliminationFailed, NonIsolated, PointNotOnVariety
from .linalg import nullspace, rank, solve_affine
from .numeric import RANK_GAP, ROOT_TOL, complex_hessian, numeric_rank
from .standard_basis import INFINITE, Ideal, local_dimension, monomial_basis, mora, quotient_dimension


class GermClass(str, Enum):
    SMOOTH = "Smooth"
    NODE = "Node_A1"
    CUSP = "ThreefoldCusp_IIxII"
    OTHER = "NotNode_Other"


@dataclass(frozen=True)
class Germ:
    polynomial: Polynomial

    @property
    def dimension(self) -> int:
        return self.polynomial.ring.ngens


def _poly(f) -> Polynomial:
    return f.polynomial if isinstance(f, Germ) else f


@dataclass(frozen=True)
class WeightedHomogeneity:
    weights: tuple[Fraction, ...] | None
    degree: Fraction | None = None

    def __bool__(self):
        return self.weights is not None


@dataclass(frozen=True)
class GermReport:
    germ_class: GermClass
    milnor: int | None
    tyurina: int | None
    t1_basis: tuple[Polynomial, ...] | None
    weighted_homogeneous: WeightedHomogeneity
    corank: int
    exact: bool = True
    notes: tuple[str, ...] = field(default_factory=tuple)


def jacobian_ideal(f) -> Ideal:
    f = _poly(f)
    return Ideal([f.derivative(v) for v in f.ring.variables])


def tjurina_ideal(f) -> Ideal:
    f = _poly(f)
    return Ideal([f] + [f.derivative(v) for v in f.ring.variables])


def milnor_number(f) -> int:
    dim = quotient_dimension(mora(jacobian_ideal(f)))
    if dim is INFINITE:
        raise NonIsolated("the singularity at the origin is not isolated")
    return dim


def tyurina_number(f) -> int:
    dim = quotient_dimension(mora(tjurina_ideal(f)))
    if dim is INFINITE:
        raise NonIsolated("the singularity at the origin is not isolated")
    return dim


def t1_basis(f) -> tuple[Polynomial, ...]:
    """Monomial basis of the Tyurina algebra, i.e. of T^1 of the germ."""
    f = _poly(f)
    sb = mora(tjurina_ideal(f))
    if quotient_dimension(sb) is INFINITE:
        raise NonIsolated("the singularity at the origin is not isolated")
    qb = monomial_basis(sb)
    return tuple(f.ring.monomial(e) for e in qb.monomials)


def is_weighted_homogeneous(f) -> WeightedHomogeneity:
    """Positive rational weights w with every monomial of weighted degree 1, if any."""
    from scipy.optimize import linprog

    f = _poly(f)
    exps = [list(e) for e in f.terms]
    if not exps or any(not any(e) for e in exps):
        return WeightedHomogeneity(None)
    sol = solve_affine([[Fraction(x) for x in e] for e in exps], [Fraction(1)] * len(exps))
    if sol is None:
        return WeightedHomogeneity(None)
    x0, null = sol
    n = len(x0)
    if not null:
        return WeightedHomogeneity(tuple(x0), Fraction(1)) if all(w > 0 for w in x0) else WeightedHomogeneity(None)
    k = len(null)
    # maximize s subject to x0 + N c >= s, s <= 1
    cost = [0.0] * k + [-1.0]
    A_ub, b_ub = [], []
    for i in range(n):
        A_ub.append([-float(null[j][i]) for j in range(k)] + [1.0])
        b_ub.append(float(x0[i]))
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * k + [(None, 1.0)], method="highs")
    if not res.success or -res.fun <= 1e-9:
        return WeightedHomogeneity(None)
    for den in (12, 120, 5040, 10**6):
        c = [Fraction(v).limit_denominator(den) for v in res.x[:k]]
        w = [x0[i] + sum(c[j] * null[j][i] for j in range(k)) for i in range(n)]
        if all(v > 0 for v in w):
            return WeightedHomogeneity(tuple(w), Fraction(1))
    return WeightedHomogeneity(None)


def versal_family(f, names: Sequence[str] | None = None) -> Polynomial:
    """F + sum c_i m_i over the T^1 monomials, with the c_i as field parameters."""
    f = _poly(f)
    basis = t1_basis(f)
    names = tuple(names or (f"c{i}" for i in range(len(basis))))
    if len(names) != len(basis):
        raise ValueError(f"need {len(basis)} parameter names, got {len(names)}")
    if f.ring.field != QQ:
        raise TypeError("versal families are built over QQ")
    K = FractionField(names)
    ring = PolyRing(f.ring.variables, K)
    out = f.change_ring(ring)
    for c, m in zip(K.gens(), basis):
        out = out + m.change_ring(ring) * ring.constant(c)
    return out


def _field_one(f: Polynomial):
    return f.ring.field.one


def hessian_at_origin(f: Polynomial) -> list[list]:
    n = f.ring.ngens
    zero = f.ring.field.zero
    H = [[zero] * n for _ in range(n)]
    for e, c in f.terms.items():
        if sum(e) != 2:
            continue
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            H[i][i] = H[i][i] + 2 * c
        else:
            H[i][j] = H[i][j] + c
            H[j][i] = H[j][i] + c
    return H


def binary_cubic_discriminant(c3, c2, c1, c0):
    return c2 * c2 * c1 * c1 - 4 * c3 * c1**3 - 4 * c2**3 * c0 - 27 * c3 * c3 * c0 * c0 + 18 * c3 * c2 * c1 * c0


def _restricted_cubic(f: Polynomial, kernel: list[list]):
    """Coefficients of the cubic part of f restricted to span(kernel[0], kernel[1])."""
    cubic = f.homogeneous_part(3)
    ring2 = PolyRing(("s", "r"), f.ring.field)
    s, r = ring2.gens()
    images = {v: s * kernel[0][i] + r * kernel[1][i] for i, v in enumerate(f.ring.variables)}
    b = cubic.substitute(images, ring2)
    return tuple(b.coeff((3 - k, k)) for k in range(4))


def classify_germ(f, compute_invariants: bool = True, probe_order: int = 10) -> GermReport:
    """Classify the hypersurface germ {f = 0} at the origin."""
    f = _poly(f)
    if f.constant_coeff():
        raise PointNotOnVariety("the origin does not lie on the hypersurface")
    n = f.ring.ngens
    wh = is_weighted_homogeneous(f)
    if f.lowest_degree() == 1:
        return GermReport(GermClass.SMOOTH, 0, 0, (), wh, 0)
    H = hessian_at_origin(f)
    one = _field_one(f)
    r = rank(H, one)
    corank = n - r
    if corank == 0:
        return GermReport(GermClass.NODE, 1, 1, (f.ring.one,), wh, 0)
    mu = tau = None
    basis = None
    notes = []
    if compute_invariants or corank == 2:
        # truncated local bases first: a full standard basis of a non-isolated
        # Jacobian ideal can take very long, while a stable truncation certifies mu
        mu, seq = local_dimension(jacobian_ideal(f), probe_order)
        if mu is not None:
            tsb = mora(tjurina_ideal(f))
            tau = quotient_dimension(tsb)
            basis = tuple(f.ring.monomial(e) for e in monomial_basis(tsb).monomials)
        else:
            notes.append(f"Milnor number exceeds {seq[-1]}: truncations did not stabilize up to order {probe_order}")
    if corank == 2 and n == 4 and mu == 4:
        kernel = nullspace(H, n, one)
        disc = binary_cubic_discriminant(*_restricted_cubic(f, kernel))
        if disc:
            return GermReport(GermClass.CUSP, mu, tau, basis, wh, corank, notes=tuple(notes))
    return GermReport(GermClass.OTHER, mu, tau, basis, wh, corank, notes=tuple(notes))


# -- fiber products ---------------------------------------------------------------


@dataclass(frozen=True)
class FiberProductGerm:
    polynomial: Polynomial
    route: str  # "resultant" or "series"
    order: int | None = None  # truncation order for the series route
    removed_factor: Polynomial | None = None

    @property
    def initial_form(self) -> Polynomial:
        return self.polynomial.initial_form()


def _merge_rings(f: Polynomial, g: Polynomial, t: str):
    fv = [v for v in f.ring.variables if v != t]
    gv = [v for v in g.ring.variables if v != t]
    if set(fv) & set(gv):
        raise ValueError(f"fiber factors share variables {set(fv) & set(gv)}")
    fieldc = common_field(f.ring.field, g.ring.field)
    full = PolyRing(tuple(fv + gv) + (t,), fieldc)
    out = PolyRing(tuple(fv + gv), fieldc)
    return full, out, f.change_ring(full), g.change_ring(full)


def _truncated_mul(a: Polynomial, b: Polynomial, k: int) -> Polynomial:
    out: dict = {}
    for e1, c1 in a.terms.items():
        d1 = sum(e1)
        for e2, c2 in b.terms.items():
            if d1 + sum(e2) > k:
                continue
            e = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(e)
            out[e] = c1 * c2 if s is None else s + c1 * c2
    return Polynomial(a.ring, {e: c for e, c in out.items() if c})


def _horner_in_t(p: Polynomial, t: str, phi: Polynomial, out_ring: PolyRing, k: int) -> Polynomial:
    coeffs = p.coefficients_in(t)
    deg = max(coeffs)
    acc = out_ring.zero
    for i in range(deg, -1, -1):
        acc = _truncated_mul(acc, phi, k)
        if i in coeffs:
            acc = acc + coeffs[i].change_ring(out_ring).truncate(k)
    return acc


def _solve_t_series(g: Polynomial, t: str, out_ring: PolyRing, k: int) -> Polynomial:
    """Power series t = phi(x) with g(x, phi) = 0 and phi(0) = 0, truncated at degree k."""
    gt0 = g.derivative(t).constant_coeff()
    phi = out_ring.zero
    for _ in range(k + 1):
        val = _horner_in_t(g, t, phi, out_ring, k)
        if val.is_zero():
            break
        phi = phi - val.scale(1 / gt0)
    return phi


def fiber_product_germ(f: Polynomial, g: Polynomial, t: str = "t", order: int = 6) -> FiberProductGerm:
    """Germ at the origin of {f = g = 0} after eliminating ``t``.

    ``f`` and ``g`` involve disjoint sets of variables apart from ``t``.
    When either equation is linear in ``t`` the resultant gives the germ
    exactly.  Otherwise ``t`` is solved as a power series from an equation
    with nonzero t-derivative and the result is truncated at ``order``.
    """
    full, out, F, G = _merge_rings(f, g, t)
    if F.constant_coeff() or G.constant_coeff():
        raise PointNotOnVariety("the origin does not lie on both factors")
    if F.degree(t) == 1 or G.degree(t) == 1:
        R = resultant(F, G, t)
        if R.is_zero():
            raise EliminationFailed("the resultant vanishes identically")
        R = R.change_ring(out)
        c = monomial_content(R)
        if c != 1:
            R = R.scale(1 / c.constant_coeff())
        return FiberProductGerm(R, "resultant", None, c)
    if G.derivative(t).constant_coeff():
        phi = _solve_t_series(G, t, out, order)
        germ = _horner_in_t(F, t, phi, out, order)
    elif F.derivative(t).constant_coeff():
        phi = _solve_t_series(F, t, out, order)
        germ = _horner_in_t(G, t, phi, out, order)
    else:
        raise EliminationFailed("t is not locally solvable and neither equation is linear in t")
    if germ.is_zero():
        raise EliminationFailed("the eliminated germ vanishes to the truncation order")
    return FiberProductGerm(germ, "series", order)


def classify_fiber_product(f: Polynomial, g: Polynomial, t: str = "t", max_order: int = 12):
    """Classify the fiber-product germ, raising the series order until it is determined."""
    order = 6
    full, _, F, G = _merge_rings(f, g, t)
    if any(all(p.derivative(v).constant_coeff() == 0 for v in p.variables_used() or full.variables) for p in (F, G)):
        # one surface is singular at the point, so the product contains the
        # curve {point} x (fiber of the other factor) of singular points
        note = "non-isolated: a factor surface is singular at the point"
        try:
            fp = fiber_product_germ(f, g, t, order)
        except EliminationFailed:
            return None, GermReport(GermClass.OTHER, None, None, None, None, None, notes=(note, "t cannot be eliminated locally"))
        report = classify_germ(fp.polynomial, compute_invariants=False)
        return fp, GermReport(GermClass.OTHER, None, None, None, report.weighted_homogeneous, report.corank, notes=(note,))
    # the 2-jet already decides nodes, so try the cheapest truncation first
    fp = fiber_product_germ(f, g, t, 2)
    if fp.route == "resultant":
        return fp, classify_germ(fp.polynomial)
    if fp.polynomial.lowest_degree() == 1 or (
        fp.polynomial.lowest_degree() == 2 and rank(hessian_at_origin(fp.polynomial), _field_one(fp.polynomial)) == fp.polynomial.ring.ngens
    ):
        return fp, classify_germ(fp.polynomial)
    while True:
        fp = fiber_product_germ(f, g, t, order)
        report = classify_germ(fp.polynomial)
        if fp.route == "resultant" or report.germ_class in (GermClass.SMOOTH, GermClass.NODE):
            return fp, report
        if report.milnor is not None and report.milnor + 1 <= order:
            return fp, report
        if order >= max_order:
            return fp, report
        order += 2


# -- the nodal fiber-product germ ------------------------------------------------------


NODE_GERM_RING = PolyRing(("X", "Y", "U", "V"))


def weierstrass_node_germ(eta) -> Polynomial:
    """X^2 - U^2 - 3 eta Y^2 + 3 eta V^2 - Y^3 + V^3, the eliminated germ over a root with A != 0."""
    R = NODE_GERM_RING.with_field(QQ_OMEGA) if isinstance(eta, QOmega) else NODE_GERM_RING
    X, Y, U, V = R.gens()
    return X * X - U * U - Y * Y * (3 * eta) + V * V * (3 * eta) - Y**3 + V**3


@dataclass(frozen=True)
class TaggedSingularPoint:
    point: tuple
    report: GermReport
    tag: str  # "origin" or "sign-companion"


def weierstrass_node_germ_points(eta) -> list[TaggedSingularPoint]:
    """Both singular points of the nodal germ.

    For eta != 0 there is a second point (0, -2 eta, 0, -2 eta); the germ
    there is the same polynomial with eta replaced by -eta, so it is tagged
    as the sign-companion of the origin instead of being dropped.
    """
    F = weierstrass_node_germ(eta)
    # the gradient forces X = U = 0 and Y, V in {0, -2 eta}
    cands = {(0, y, 0, v) for y in (0, -2 * eta) for v in (0, -2 * eta)}
    out = []
    for pt in sorted(cands, key=lambda p: (p != (0, 0, 0, 0), str(p))):
        if F.evaluate(list(pt)) != 0:
            continue
        if any(F.derivative(v).evaluate(list(pt)) != 0 for v in F.ring.variables):
            continue
        tag = "origin" if all(c == 0 for c in pt) else "sign-companion"
        out.append(TaggedSingularPoint(pt, classify_germ(translate(F, pt)), tag))
    return out


@dataclass(frozen=True)
class NumericGermReport:
    germ_class: GermClass
    corank: int
    exact: bool = False


def classify_numeric(f: Polynomial, point: Sequence, tol: float = ROOT_TOL) -> NumericGermReport:
    """Node test at a numeric point: vanishing gradient and full-rank Hessian."""
    pt = [complex(x) for x in point]
    if abs(f.evaluate_complex(pt)) > tol * max(1.0, _scale(f, pt)):
        raise PointNotOnVariety("point is not on the hypersurface")
    grad = [abs(f.derivative(v).evaluate_complex(pt)) for v in f.ring.variables]
    if max(grad) > tol * max(1.0, _scale(f, pt)):
        return NumericGermReport(GermClass.SMOOTH, 0)
    H = complex_hessian(f, pt)
    r = numeric_rank(H)
    n = f.ring.ngens
    return NumericGermReport(GermClass.NODE if r == n else GermClass.OTHER, n - r)


def _scale(f: Polynomial, pt) -> float:
    return max(abs(f.ring.field.to_complex(c)) for c in f.terms.values()) * max(1.0, max(abs(x) for x in pt)) ** max(
        1, f.total_degree()
    )


def classify_fiber_product_numeric(
    f: Polynomial, g: Polynomial, point: dict, t: str = "t", tol: float = ROOT_TOL
) -> NumericGermReport:
    """Node test for {f = g = 0} at a numeric point, with t eliminated implicitly.

    If dg/dt != 0 the eliminated germ has Hessian Hess_x(f) - (f_t/g_t) Hess_x(g)
    at the point, since the x-gradients vanish there.
    """
    full, out, F, G = _merge_rings(f, g, t)
    pt = [complex(point[v]) for v in full.variables]
    for p in (F, G):
        if abs(p.evaluate_complex(pt)) > tol * max(1.0, _scale(p, pt)):
            raise PointNotOnVariety("point is not on the fiber product")
    xs = out.variables
    ft = F.derivative(t).evaluate_complex(pt)
    gt = G.derivative(t).evaluate_complex(pt)
    gradx = [abs(p.derivative(v).evaluate_complex(pt)) for p in (F, G) for v in xs]
    if max(gradx) > tol * max(1.0, _scale(F, pt), _scale(G, pt)):
        return NumericGermReport(GermClass.SMOOTH, 0)
    if abs(gt) > RANK_GAP:
        lam = ft / gt
        a, b = F, G
    elif abs(ft) > RANK_GAP:
        lam = gt / ft
        a, b = G, F
    else:
        return NumericGermReport(GermClass.OTHER, len(xs))
    Ha = np.array(complex_hessian(a, pt, xs))
    Hb = np.array(complex_hessian(b, pt, xs))
    r = numeric_rank(Ha - lam * Hb)
    return NumericGermReport(GermClass.NODE if r == len(xs) else GermClass.OTHER, len(xs) - r)


# -- smoothness --------------------------------------------------------------------


@dataclass(frozen=True)
class SmoothnessResult:
    smooth: bool
    corank: int
    rank: int
    exact: bool

    def __str__(self):
        return "Smooth" if self.smooth else f"SingularOfCorank({self.corank})"


def _is_exact_value(x) -> bool:
    return isinstance(x, (int, Fraction, QOmega))


def smoothness_check(system: Sequence[Polynomial], point, tol: float = ROOT_TOL) -> SmoothnessResult:
    """Jacobian criterion for the complete intersection ``system`` at ``point``."""
    ring = system[0].ring
    if isinstance(point, dict):
        point = [point[v] for v in ring.variables]
    point = list(point)
    codim = len(system)
    if all(_is_exact_value(x) for x in point):
        if any(isinstance(x, QOmega) for x in point) and ring.field == QQ:
            ring = ring.with_field(QQ_OMEGA)
            system = [p.change_ring(ring) for p in system]
        for p in system:
            if p.evaluate(point) != 0:
                raise PointNotOnVariety(f"{p} does not vanish at the point")
        J = [[p.derivative(v).evaluate(point) for v in ring.variables] for p in system]
        r = rank(J, ring.field.one)
        return SmoothnessResult(r == codim, codim - r, r, True)
    pt = [complex(x) for x in point]
    for p in system:
        if abs(p.evaluate_complex(pt)) > tol * max(1.0, _scale(p, pt)):
            raise PointNotOnVariety(f"{p} does not vanish at the point")
    J = [[p.derivative(v).evaluate_complex(pt) for v in ring.variables] for p in system]
    r = numeric_rank(J)
    return SmoothnessResult(r == codim, codim - r, r, False)


def germ_at(f: Polynomial, point) -> Polynomial:
    """Translate ``point`` to the origin."""
    return translate(f, point)


__all__ = [
    "FiberProductGerm",
    "Germ",
    "GermClass",
    "GermReport",
    "NumericGermReport",
    "SmoothnessResult",
    "TaggedSingularPoint",
    "WeightedHomogeneity",
    "classify_fiber_product",
    "classify_fiber_product_numeric",
    "classify_germ",
    "classify_numeric",
    "fiber_product_germ",
    "germ_at",
    "is_weighted_homogeneous",
    "jacobian_ideal",
    "milnor_number",
    "smoothness_check",
    "t1_basis",
    "tjurina_ideal",
    "tyurina_number",
    "versal_family",
    "weierstrass_node_germ",
    "weierstrass_node_germ_points",
]
