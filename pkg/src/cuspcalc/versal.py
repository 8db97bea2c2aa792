"""The versal deformation of the threefold cusp x^2 - y^3 - z^2 + w^3.

The Kuranishi family is F_L = x^2 - y^3 - z^2 + w^3 + lam + mu*y - nu*w + sigma*y*w
with L = (lam, mu, nu, sigma).  Singular points of a fiber have x = z = 0
and (y, w) solving the critical system below.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .algebra.fields import OMEGA, QQ, QQ_OMEGA, QOmega
from .algebra.polynomial import PolyRing, Polynomial, translate
from .algebra.univariate import divide_with_remainder, ugcd
from .errors import PositiveDimensionalSingularLocus
from .germ import GermClass, GermReport, NumericGermReport, classify_germ, classify_numeric
from .numeric import Root, polynomial_roots

PARAMS = ("lam", "mu", "nu", "sigma")
SPACE = ("x", "y", "z", "w")
CUSP_TEXT = "x^2 - y^3 - z^2 + w^3"
SYMBOLIC_RING = PolyRing(PARAMS + ("y", "w"))
PARAM_RING = PolyRing(PARAMS)
SIGMA_RING = PolyRing(("sigma",), QQ_OMEGA)


def field_of(values) -> object:
    return QQ_OMEGA if any(isinstance(v, QOmega) and v.b for v in values) else QQ


@dataclass(frozen=True)
class KuranishiPoint:
    """A point L = (lam, mu, nu, sigma) of the Kuranishi space.

    Coordinates are field elements, or polynomials in sigma for a
    parametrized point.
    """

    lam: object
    mu: object
    nu: object
    sigma: object

    def as_tuple(self):
        return (self.lam, self.mu, self.nu, self.sigma)

    def coefficient_tuple(self):
        """Coordinates (lam, mu, -nu, sigma), the coefficients of 1, y, w, yw."""
        return (self.lam, self.mu, -self.nu, self.sigma)

    @property
    def parametrized(self) -> bool:
        return any(isinstance(c, Polynomial) for c in self.as_tuple())

    def at(self, sigma) -> KuranishiPoint:
        """Specialize a parametrized point at a value of sigma."""
        vals = []
        for c in self.as_tuple():
            if isinstance(c, Polynomial):
                v = c.evaluate([sigma])
                vals.append(v.a if isinstance(v, QOmega) and v.b == 0 else v)
            else:
                vals.append(c)
        return KuranishiPoint(*vals)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.as_tuple()) + ")"


def cusp(ring: PolyRing | None = None) -> Polynomial:
    ring = ring or PolyRing(SPACE)
    return ring(CUSP_TEXT)


def kuranishi_family(point: KuranishiPoint | None = None) -> Polynomial:
    """F_L; symbolic in the parameters when ``point`` is None."""
    if point is None:
        ring = PolyRing(PARAMS + SPACE)
        return ring(CUSP_TEXT + " + lam + mu*y - nu*w + sigma*y*w")
    field = field_of(point.as_tuple())
    ring = PolyRing(SPACE, field)
    x, y, z, w = ring.gens()
    lam, mu, nu, sigma = point.as_tuple()
    return cusp(ring) + ring.constant(lam) + y * mu - w * nu + y * w * sigma


def critical_system(point: KuranishiPoint | None = None) -> list[Polynomial]:
    """[3y^2 - sigma*w - mu, 3w^2 + sigma*y - nu, sigma*y*w + 2mu*y - 2nu*w + 3lam]."""
    if point is None:
        R = SYMBOLIC_RING
        return [R("3*y^2 - sigma*w - mu"), R("3*w^2 + sigma*y - nu"), R("sigma*y*w + 2*mu*y - 2*nu*w + 3*lam")]
    field = field_of(point.as_tuple())
    R = PolyRing(("y", "w"), field)
    y, w = R.gens()
    lam, mu, nu, sigma = point.as_tuple()
    return [
        y * y * 3 - w * sigma - R.constant(mu),
        w * w * 3 + y * sigma - R.constant(nu),
        y * w * sigma + y * (2 * mu) - w * (2 * nu) + R.constant(3 * lam),
    ]


def eliminated_pair(point: KuranishiPoint | None = None) -> tuple[Polynomial, Polynomial]:
    """R1, R2: the critical system with w = (3y^2 - mu)/sigma substituted, denominators cleared."""
    if point is None:
        R = PolyRing(PARAMS + ("y",))
        return (
            R("27*y^4 - 18*mu*y^2 + sigma^3*y + 3*mu^2 - nu*sigma^2"),
            R("3*sigma*y^3 - 6*nu*y^2 + mu*sigma*y + 2*mu*nu + 3*lam*sigma"),
        )
    field = field_of(point.as_tuple())
    R = PolyRing(("y",), field)
    lam, mu, nu, sigma = point.as_tuple()
    y = R.gen(0)
    wnum = y * y * 3 - R.constant(mu)  # sigma * w
    e2 = wnum * wnum * 3 + (y * sigma - R.constant(nu)) * (sigma * sigma)
    e3 = y * wnum * sigma + y * (2 * mu * sigma) - wnum * (2 * nu) + R.constant(3 * lam * sigma)
    return e2, e3


# -- singular points of concrete fibers ----------------------------------------------


@dataclass(frozen=True)
class SingularPoint:
    coordinates: tuple  # (x, y, z, w): exact field elements or complex numbers
    exact: bool
    report: GermReport | NumericGermReport

    @property
    def germ_class(self) -> GermClass:
        return self.report.germ_class


@dataclass(frozen=True)
class DeformedFiberReport:
    point: KuranishiPoint
    singular_points: tuple[SingularPoint, ...]

    @property
    def classes(self) -> list[GermClass]:
        return [p.germ_class for p in self.singular_points]

    @property
    def all_exact(self) -> bool:
        return all(p.exact for p in self.singular_points)


def _roots_of(p: Polynomial) -> list[Root]:
    if p.total_degree() <= 0:
        return []
    return polynomial_roots(p)


def _critical_points(point: KuranishiPoint) -> list[tuple]:
    """Solutions (y, w) of the critical system, exact when they lie in Q(omega)."""
    lam, mu, nu, sigma = point.as_tuple()
    field = field_of(point.as_tuple())
    Ry = PolyRing(("y",), field)
    system = critical_system(point)
    out = []
    if sigma != 0:
        r1, r2 = eliminated_pair(point)
        g = ugcd(r1, r2)
        if g.is_zero():
            raise PositiveDimensionalSingularLocus("critical equations share a curve of solutions")
        for root in _roots_of(g):
            if root.is_exact:
                y0 = root.exact
                w0 = (3 * y0 * y0 - mu) / sigma
                out.append(((y0, w0), True))
            else:
                y0 = root.value
                w0 = (3 * y0 * y0 - complex(QQ_OMEGA.convert(mu))) / complex(QQ_OMEGA.convert(sigma))
                out.append(((y0, w0), False))
        return out
    py = Ry.gen(0) ** 2 * 3 - Ry.constant(mu)
    pw = py.ring.gen(0) ** 2 * 3 - Ry.constant(nu)
    third = system[2]
    for ry in _roots_of(py):
        for rw in _roots_of(pw):
            if ry.is_exact and rw.is_exact:
                ok = third.change_ring(third.ring.with_field(QQ_OMEGA)).evaluate([ry.exact, rw.exact]) == 0
                if ok:
                    out.append(((ry.exact, rw.exact), True))
            else:
                val = third.evaluate_complex([ry.value, rw.value])
                if abs(val) < 1e-9 * max(1.0, abs(complex(QQ_OMEGA.convert(lam)))):
                    out.append(((ry.value, rw.value), False))
    return out


def deformed_fiber_singularities(point: KuranishiPoint) -> DeformedFiberReport:
    """Singular points of the fiber over a concrete Kuranishi point, each classified."""
    F = kuranishi_family(point)
    points = []
    for (y0, w0), exact in _critical_points(point):
        if exact:
            coords = (0, y0, 0, w0)
            report = classify_germ(translate(F, coords))
        else:
            coords = (0j, complex(y0), 0j, complex(w0))
            report = classify_numeric(F, coords)
        points.append(SingularPoint(coords, exact, report))
    return DeformedFiberReport(point, tuple(points))


class SFiberType(str, Enum):
    NODE = "I1xI1"
    CUSP = "IIxII"
    MIXED = "I1xII"
    OTHER = "other"


def s_fiber_type(report) -> SFiberType:
    if report.germ_class is GermClass.NODE:
        return SFiberType.NODE
    if report.germ_class is GermClass.CUSP:
        return SFiberType.CUSP
    if getattr(report, "corank", None) == 1 and getattr(report, "milnor", None) == 2:
        return SFiberType.MIXED
    return SFiberType.OTHER


@dataclass(frozen=True)
class SDeformationReport:
    fiber: DeformedFiberReport
    types: tuple[SFiberType, ...]


def classify_S_deformation(lam, mu, nu) -> SDeformationReport:
    """Singularities over the sigma = 0 slice S of the Kuranishi space."""
    fib = deformed_fiber_singularities(KuranishiPoint(lam, mu, nu, 0))
    return SDeformationReport(fib, tuple(s_fiber_type(p.report) for p in fib.singular_points))


# -- the three-node locus -------------------------------------------------------------


class LocusFlag(str, Enum):
    THREE_NODES = "ThreeNodes"
    TRIVIAL = "Trivial"


@dataclass(frozen=True)
class LocusSolution:
    point: KuranishiPoint  # parametrized by sigma, coefficients in Q(omega)
    flag: LocusFlag
    nu_ratio: object  # nu / sigma^2
    r2: Polynomial  # R2 along the branch, in (sigma, y)
    singular_classes: tuple  # germ reports of the fiber at sigma = 1


@dataclass(frozen=True)
class ThreeNodeLocus:
    remainder: Polynomial
    conditions: tuple[Polynomial, ...]
    solutions: tuple[LocusSolution, ...]
    curve_ideal: tuple[Polynomial, ...]


LOCUS_WEIGHTS = {"lam": 3, "mu": 2, "nu": 2, "sigma": 1}


def _primitive_integer(p: Polynomial) -> Polynomial:
    """Divide by the positive rational content, keeping the sign of every coefficient."""
    from math import gcd, lcm

    num = den = 0
    for c in p.terms.values():
        num = gcd(num, c.numerator)
        den = lcm(den, c.denominator) if den else c.denominator
    return p.scale(Fraction(den, num)) if num else p


def three_node_locus_conditions() -> tuple[Polynomial, tuple[Polynomial, ...]]:
    """Remainder of R1 by R2 in y and its coefficients with denominators cleared."""
    r1, r2 = eliminated_pair()
    _, rem = divide_with_remainder(r1, r2, "y")
    conds = []
    for k in (2, 1, 0):
        c = rem.coeff((k,))
        num = c.num.change_ring(PARAM_RING)
        conds.append(_primitive_integer(num))
    return rem, tuple(conds)


def _weighted_degrees(p: Polynomial) -> set[int]:
    w = [LOCUS_WEIGHTS[v] for v in p.ring.variables]
    return {sum(a * b for a, b in zip(e, w)) for e in p.terms}


def three_node_locus() -> ThreeNodeLocus:
    """Points of the sigma != 0 part where the remainder of R1 by R2 vanishes."""
    rem, conds = three_node_locus_conditions()
    c1, c2, c3 = conds
    for c in conds:
        if len(_weighted_degrees(c)) != 1:
            raise AssertionError("locus conditions are expected to be weighted homogeneous")
    # at sigma = 1, c1 is linear in mu and c2 is linear in lam
    mu_part = c1.coefficients_in("mu")
    mu_of_nu = -_at_sigma_one(mu_part.get(0, c1.ring.zero)).scale(1 / _at_sigma_one(mu_part[1]).constant_coeff())
    lam_part = c2.coefficients_in("lam")
    b2 = _at_sigma_one(lam_part.get(0, c2.ring.zero), mu=mu_of_nu)
    lam_of_nu = -b2.scale(1 / _at_sigma_one(lam_part[1]).constant_coeff())
    final = _at_sigma_one(c3, mu=mu_of_nu, lam=lam_of_nu)
    solutions = []
    S = SIGMA_RING
    s = S.gen(0)
    for root in polynomial_roots(final):
        if not root.is_exact:
            raise AssertionError("three-node locus solution outside Q(omega)")
        r = QQ_OMEGA.convert(root.exact)
        mu_r = mu_of_nu.change_ring(mu_of_nu.ring.with_field(QQ_OMEGA)).evaluate([r])
        lam_r = lam_of_nu.change_ring(lam_of_nu.ring.with_field(QQ_OMEGA)).evaluate([r])
        pt = KuranishiPoint(s**3 * lam_r, s**2 * mu_r, s**2 * r, s)
        for c in conds:
            val = c.substitute(dict(zip(PARAMS, pt.as_tuple())), S)
            if not val.is_zero():
                raise AssertionError("parametrized solution does not satisfy the locus conditions")
        flag, r2, reports = _flag_for(pt)
        solutions.append(LocusSolution(pt, flag, r, r2, reports))
    solutions.sort(key=lambda sol: (sol.flag is not LocusFlag.THREE_NODES, _phase(sol.nu_ratio)))
    curve = _curve_ideal(next(sol.point for sol in solutions if sol.flag is LocusFlag.THREE_NODES))
    return ThreeNodeLocus(rem, conds, tuple(solutions), curve)


def _phase(z) -> float:
    return cmath.phase(complex(z)) % (2 * cmath.pi)


NU_RING = PolyRing(("nu",))


def _at_sigma_one(p: Polynomial, mu=None, lam=None) -> Polynomial:
    """Set sigma = 1 and express in nu, with mu and lam given as polynomials in nu."""
    used = set(p.variables_used())
    if ("mu" in used and mu is None) or ("lam" in used and lam is None):
        raise ValueError("unresolved parameter")
    R = NU_RING
    return p.substitute({"sigma": R.one, "nu": R.gen(0), "mu": mu or R.zero, "lam": lam or R.zero}, R)


BRANCH_RING = PolyRing(("sigma", "y"), QQ_OMEGA)


def branch_r2(pt: KuranishiPoint) -> Polynomial:
    """R2 restricted to a parametrized branch."""
    R = BRANCH_RING
    r2 = eliminated_pair()[1]
    images = {name: c.change_ring(R) for name, c in zip(PARAMS, pt.as_tuple())}
    images["y"] = R.gen("y")
    return r2.substitute(images, R)


def _perfect_cube_root(r2: Polynomial):
    """c with r2 = 3*sigma*(y - c*sigma)^3, or None."""
    s, y = BRANCH_RING.gens()
    c = -r2.coeff((2, 2)) / 9
    return c if r2 == s * (y - s * c) ** 3 * 3 else None


def _flag_for(pt: KuranishiPoint):
    r2 = branch_r2(pt)
    reports = tuple(p.report for p in deformed_fiber_singularities(pt.at(Fraction(1))).singular_points)
    if _perfect_cube_root(r2) is not None:
        # one singular point on every fiber of the branch
        return LocusFlag.TRIVIAL, r2, reports
    for sval in (Fraction(1), Fraction(3), Fraction(-2)):
        classes = deformed_fiber_singularities(pt.at(sval)).classes
        if classes != [GermClass.NODE] * 3:
            raise AssertionError(f"unexpected singularities along a locus branch: {classes}")
    return LocusFlag.THREE_NODES, r2, reports


def _curve_ideal(pt: KuranishiPoint) -> tuple[Polynomial, ...]:
    """Implicit equations of a branch parametrized as (p_lam(s), p_mu(s), p_nu(s), s)."""
    R = PARAM_RING
    out = []
    for name, comp in zip(PARAMS[:3], pt.as_tuple()[:3]):
        if any(isinstance(c, QOmega) and c.b for c in comp.terms.values()):
            raise ValueError("curve ideal needs rational coefficients")
        poly = comp.change_ring(PolyRing(("sigma",))).change_ring(R)
        gen = poly - R.gen(name)
        if gen.degree("sigma") <= 0:
            gen = -gen
        out.append(_primitive_integer(gen))
    return tuple(out)


def on_curve(point: KuranishiPoint, ideal: Sequence[Polynomial]) -> bool:
    vals = point.as_tuple()
    field = field_of(vals)
    return all(g.change_ring(g.ring.with_field(field)).evaluate(vals) == 0 for g in ideal)


def orthogonality_tangent(sol: LocusSolution) -> tuple:
    """Tangent vector d/dsigma of a parametrized branch at sigma = 0."""
    return tuple(c.derivative("sigma").evaluate([0]) for c in sol.point.as_tuple())


# -- the factored family ---------------------------------------------------------------


def factored_family(alpha, beta, gamma, ring: PolyRing | None = None) -> Polynomial:
    """x^2 - z^2 - (y - w + alpha)(y - omega*w + beta)(y - omega^2*w + gamma)."""
    ring = ring or PolyRing(SPACE, QQ_OMEGA)
    x, y, z, w = ring.gens()
    e = OMEGA
    prod = (y - w + alpha) * (y - w * e + beta) * (y - w * (e * e) + gamma)
    return x * x - z * z - prod


def l_form(alpha, beta, gamma):
    """alpha + omega*beta + omega^2*gamma; the plane pi is its zero set."""
    e = OMEGA
    return QQ_OMEGA.convert(alpha) + e * beta + e * e * gamma


A_CONST = QOmega(Fraction(-1, 3), Fraction(1, 3))  # -1/2 + i*sqrt(3)/6
A_BAR = QOmega(Fraction(-2, 3), Fraction(-1, 3))  # -1/2 - i*sqrt(3)/6
I_OVER_SQRT3 = QOmega(Fraction(1, 3), Fraction(2, 3))  # i/sqrt(3) = (2*omega + 1)/3


def predicted_points(alpha, beta, gamma) -> list[tuple]:
    """Closed-form singular points (x, y, z, w) of the factored family."""
    e = OMEGA
    a, b, c = (QQ_OMEGA.convert(v) for v in (alpha, beta, gamma))
    L = l_form(a, b, c)
    if L == 0:
        return [(0, A_CONST * b + A_BAR * c, 0, I_OVER_SQRT3 * (c - b))]
    M = a + e * e * b + e * c
    N = b * c + e * a * c + e * e * a * b
    isqrt3 = QOmega(1, 2)
    vs = {-A_BAR * (a - b), -(a - c) / (3 * A_BAR), (b - c) / isqrt3}
    out = []
    for v in sorted(vs, key=lambda q: (q.a, q.b)):
        y = (3 * v * v - 2 * M * v + N) / L
        out.append((0, y, 0, v))
    return out


@dataclass(frozen=True)
class FactoredFamilyReport:
    on_plane: bool
    points: tuple[SingularPoint, ...]
    predicted: tuple[tuple, ...]
    matches_prediction: bool
    kuranishi_image: KuranishiPoint


def _solve_factored(F: Polynomial) -> list[tuple]:
    """Exact singular points with x = z = 0 of a cubic in the factored family."""
    R2 = PolyRing(("y", "w"), QQ_OMEGA)
    G = F.substitute({"x": 0, "z": 0}).change_ring(PolyRing(SPACE, QQ_OMEGA))
    G2 = G.change_ring(R2)
    Gy, Gw = G2.derivative("y"), G2.derivative("w")
    Ry = PolyRing(("y",), QQ_OMEGA)
    Rw = PolyRing(("w",), QQ_OMEGA)
    lincoef = Gw.coefficients_in("y").get(1)
    out = []
    if lincoef is not None and not lincoef.is_zero():
        # Gw = -L*y + q(w): solve for y and substitute
        L = -lincoef.constant_coeff()
        q = Gw.coefficients_in("y").get(0, R2.zero)
        y_of_w = q.change_ring(Rw).scale(1 / L)
        eqs = [p.substitute({"y": y_of_w, "w": Rw.gen(0)}, Rw) for p in (Gy, G2)]
        g = ugcd(eqs[0], eqs[1])
        for root in _roots_of(g):
            if not root.is_exact:
                raise AssertionError("singular point outside Q(omega)")
            w0 = root.exact
            out.append((y_of_w.evaluate([w0]), w0))
    else:
        for rw in _roots_of(Gw.change_ring(Rw) if Gw.degree("y") <= 0 else Gw.coefficients_in("y")[0].change_ring(Rw)):
            w0 = rw.exact
            ey = [p.substitute({"w": w0, "y": Ry.gen(0)}, Ry) for p in (Gy, G2)]
            g = ugcd(ey[0], ey[1])
            for ry in _roots_of(g):
                if not ry.is_exact:
                    raise AssertionError("singular point outside Q(omega)")
                out.append((ry.exact, w0))
    return [(QQ_OMEGA.convert(0), QQ_OMEGA.convert(y), QQ_OMEGA.convert(0), QQ_OMEGA.convert(w)) for y, w in out]


def i_map(alpha, beta, gamma) -> KuranishiPoint:
    """Kuranishi coordinates of the factored cubic with roots offset by (alpha, beta, gamma)."""
    e = OMEGA
    a, b, c = (QQ_OMEGA.convert(v) for v in (alpha, beta, gamma))
    lam = -a * b * c
    mu = -(a * c + a * b + b * c)
    nu = -(b * c + e * a * c + e * e * a * b)
    sigma = -(a + e * b + e * e * c)
    return KuranishiPoint(lam, mu, nu, sigma)


def factored_family_analysis(alpha, beta, gamma) -> FactoredFamilyReport:
    F = factored_family(alpha, beta, gamma)
    L = l_form(alpha, beta, gamma)
    pts = []
    for coords in _solve_factored(F):
        pts.append(SingularPoint(coords, True, classify_germ(translate(F, coords))))
    predicted = predicted_points(alpha, beta, gamma)
    key = lambda p: tuple((QQ_OMEGA.convert(c).a, QQ_OMEGA.convert(c).b) for c in p)
    found = sorted((p.coordinates for p in pts), key=key)
    match = found == sorted((tuple(QQ_OMEGA.convert(c) for c in p) for p in predicted), key=key)
    return FactoredFamilyReport(L == 0, tuple(pts), tuple(predicted), match, cubic_curve_map((alpha, beta, gamma)))


def cubic_curve_map(a: Sequence, k=1) -> KuranishiPoint:
    """f = i o p with p(a) = k (omega^2 alpha + beta + omega gamma)(omega, 1, omega^2)."""
    e = OMEGA
    alpha, beta, gamma = (QQ_OMEGA.convert(v) for v in a)
    s = (e * e * alpha + beta + e * gamma) * k
    return i_map(s * e, s, s * e * e)


def cubic_curve_map_symbolic(k=1) -> KuranishiPoint:
    """f as polynomials over Q(omega) in alpha, beta, gamma."""
    R = PolyRing(("alpha", "beta", "gamma"), QQ_OMEGA)
    al, be, ga = R.gens()
    e = OMEGA
    s = (al * (e * e) + be + ga * e) * k
    p1, p2, p3 = s * e, s, s * (e * e)
    lam = -(p1 * p2 * p3)
    mu = -(p1 * p3 + p1 * p2 + p2 * p3)
    nu = -(p2 * p3 + p1 * p3 * e + p1 * p2 * (e * e))
    sigma = -(p1 + p2 * e + p3 * (e * e))
    return KuranishiPoint(lam, mu, nu, sigma)


__all__ = [
    "DeformedFiberReport",
    "FactoredFamilyReport",
    "KuranishiPoint",
    "LocusFlag",
    "SFiberType",
    "ThreeNodeLocus",
    "classify_S_deformation",
    "critical_system",
    "cubic_curve_map",
    "cubic_curve_map_symbolic",
    "deformed_fiber_singularities",
    "eliminated_pair",
    "factored_family",
    "factored_family_analysis",
    "i_map",
    "kuranishi_family",
    "l_form",
    "on_curve",
    "predicted_points",
    "three_node_locus",
]
