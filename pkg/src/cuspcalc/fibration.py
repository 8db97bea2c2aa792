"""Weierstrass fibrations, pencils of plane cubics and the singularities of
their fiber self-products.

The base line has affine coordinate t; the point at infinity is handled in
the chart s = 1/t.  Census entries are independent and may be evaluated on
a thread pool whose size is read from ``CUSPCALC_THREADS``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .algebra.fields import QQ, QQ_OMEGA, QOmega
from .algebra.gcd import gcd
from .algebra.orders import LEX
from .algebra.polynomial import PolyRing, Polynomial, translate
from .algebra.univariate import squarefree_decomposition, squarefree_part, udivmod, umonic
from .errors import DegenerateFibration, EliminationFailed, NonNodalCensus
from .germ import GermClass, classify_fiber_product, classify_fiber_product_numeric
from .numeric import ROOT_TOL, Root, algebraic_root, newton_system, polynomial_roots
from .standard_basis import groebner

T_RING = PolyRing(("t",))


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("CUSPCALC_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items: Sequence):
    n = thread_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# -- census records -------------------------------------------------------------------


@dataclass(frozen=True)
class BasePoint:
    """A point of the base line: ``value`` in the chart ``chart`` ("t" or "s")."""

    root: Root
    chart: str = "t"

    @property
    def at_infinity(self) -> bool:
        return self.chart == "s" and self.root.is_exact and self.root.exact == 0

    @property
    def exact(self) -> bool:
        return self.root.is_exact

    def __str__(self):
        label = str(self.root.exact) if self.root.is_exact else f"{self.root.value:.12g}"
        return "infinity" if self.at_infinity else f"{self.chart}={label}"


@dataclass(frozen=True)
class CensusEntry:
    base: BasePoint
    multiplicity: int
    germ_class: GermClass
    point: tuple  # fiber-product coordinates, ordered as ``variables``
    variables: tuple[str, ...]
    exact: bool
    predicted: GermClass | None = None
    report: object = None

    @property
    def numerically_verified(self) -> bool:
        return not self.exact

    @property
    def consistent(self) -> bool:
        return self.predicted is None or self.predicted is self.germ_class


@dataclass(frozen=True)
class SingularFiberCensus:
    entries: tuple[CensusEntry, ...]
    discriminant_degree: int | None = None
    generic: bool | None = None

    @property
    def totals(self) -> dict[GermClass, int]:
        out: dict[GermClass, int] = {}
        for e in self.entries:
            out[e.germ_class] = out.get(e.germ_class, 0) + 1
        return out

    def count(self, cls: GermClass) -> int:
        return self.totals.get(cls, 0)

    @property
    def all_nodes(self) -> bool:
        return all(e.germ_class is GermClass.NODE for e in self.entries)


# -- Weierstrass fibrations ---------------------------------------------------------------


@dataclass(frozen=True)
class WeierstrassFibration:
    """x^2 = y^3 + A(t) y + B(t), with deg A <= 4 and deg B <= 6."""

    A: Polynomial
    B: Polynomial

    def __post_init__(self):
        A = self.A if isinstance(self.A, Polynomial) else T_RING(self.A)
        B = self.B if isinstance(self.B, Polynomial) else T_RING(self.B)
        if A.ring.ngens != 1 or B.ring.ngens != 1:
            raise DegenerateFibration("A and B must be univariate")
        names = {p.ring.variables[0] for p in (A, B) if not p.is_constant()}
        if len(names) > 1:
            raise DegenerateFibration("A and B must use the same variable")
        base = PolyRing((names.pop() if names else A.ring.variables[0],), QQ)
        A, B = (p.change_ring(base) if p.ring.variables == base.variables else base.constant(p.constant_coeff()) for p in (A, B))
        if A.is_zero() and B.is_zero():
            raise DegenerateFibration("A and B both vanish identically")
        if A.total_degree() > 4 or B.total_degree() > 6:
            raise DegenerateFibration("degree bounds are deg A <= 4, deg B <= 6")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @classmethod
    def parse(cls, a: str, b: str, var: str = "t") -> WeierstrassFibration:
        R = PolyRing((var,))
        return cls(R(a), R(b))

    @property
    def var(self) -> str:
        return self.A.ring.variables[0]

    def at_infinity(self) -> WeierstrassFibration:
        """The fibration in the chart s = 1/t: (s^4 A(1/s), s^6 B(1/s))."""
        R = PolyRing(("s",))
        A = R.from_terms({(4 - e[0],): c for e, c in self.A.terms.items()})
        B = R.from_terms({(6 - e[0],): c for e, c in self.B.terms.items()})
        return WeierstrassFibration(A, B)

    def scaled(self, c) -> WeierstrassFibration:
        c = Fraction(c)
        return WeierstrassFibration(self.A.scale(c**4), self.B.scale(c**6))

    def surface(self, names=("x", "y")) -> Polynomial:
        R = PolyRing(tuple(names) + (self.var,))
        x, y = R.gen(names[0]), R.gen(names[1])
        return x * x - y**3 - y * self.A.change_ring(R) - self.B.change_ring(R)


def discriminant_form(f: WeierstrassFibration) -> Polynomial:
    """delta = 4A^3 + 27B^2."""
    d = f.A**3 * 4 + f.B * f.B * 27
    if d.is_zero():
        raise DegenerateFibration("the discriminant form vanishes identically")
    return d


@dataclass(frozen=True)
class GenericityReport:
    delta_squarefree: bool
    coprime: bool

    @property
    def generic(self) -> bool:
        return self.delta_squarefree and self.coprime


def genericity_check(f: WeierstrassFibration) -> GenericityReport:
    d = discriminant_form(f)
    # a root at infinity has multiplicity 12 - deg(delta)
    sqf = all(m == 1 for _, m in squarefree_decomposition(d)) and 12 - d.total_degree() <= 1
    coprime = not (f.A.is_zero() or f.B.is_zero()) and gcd(f.A, f.B).is_constant()
    return GenericityReport(sqf, coprime)


def _weierstrass_entry(f: WeierstrassFibration, root: Root, chart: str, mult: int, predicted: GermClass, poly=None,
                       tol: float = ROOT_TOL):
    F = f.surface(("x", "y"))
    G = f.surface(("u", "v"))
    var = f.var
    variables = ("x", "y", "u", "v", var)
    if root.is_exact or poly is not None:
        t0 = algebraic_root(poly, root) if poly is not None else root.exact
        A0 = f.A.evaluate([t0]) if not f.A.is_constant() else f.A.constant_coeff()
        B0 = f.B.evaluate([t0]) if not f.B.is_constant() else f.B.constant_coeff()
        eta = 0 if A0 == 0 else -3 * B0 / (2 * A0)
        fs = translate(F, (0, eta, t0))
        gs = translate(G, (0, eta, t0))
        _, report = classify_fiber_product(fs, gs, var)
        point = (0, eta, 0, eta, t0)
        return CensusEntry(BasePoint(root, chart), mult, report.germ_class, point, variables, True, predicted, report)
    t0 = root.value
    A0 = f.A.evaluate_complex([t0])
    B0 = f.B.evaluate_complex([t0])
    eta = 0j if predicted is GermClass.CUSP else -3 * B0 / (2 * A0)
    point = (0j, eta, 0j, eta, t0)
    report = classify_fiber_product_numeric(F, G, dict(zip(variables, point)), var, tol)
    return CensusEntry(BasePoint(root, chart), mult, report.germ_class, point, variables, False, predicted, report)


def _weierstrass_tasks(f: WeierstrassFibration, chart: str, skip_zero: bool = False, exact: bool = True):
    d = discriminant_form(f)
    tasks = []
    for factor, mult in squarefree_decomposition(d):
        if factor.total_degree() <= 0:
            continue
        # exact split into roots with A = 0 and roots with A != 0
        h = factor if f.A.is_zero() else umonic(gcd(factor, f.A))
        rest = umonic(udivmod(factor, h)[0])
        for poly, predicted in ((h, GermClass.CUSP), (rest, GermClass.NODE)):
            if poly.total_degree() <= 0:
                continue
            for root in polynomial_roots(poly):
                if skip_zero and not (root.is_exact and root.exact == 0):
                    continue
                tasks.append((f, root, chart, mult, predicted, poly if exact and not root.is_exact else None))
    return tasks


def weierstrass_census(f: WeierstrassFibration, exact: bool = True, tol: float = ROOT_TOL) -> SingularFiberCensus:
    """Singular points of the fiber product X x_{P^1} X, one per root of delta.

    Each root is predicted to be a node when A(t0) != 0 and a cusp when
    A(t0) = 0; the recorded class is always the one computed from the
    fiber-product germ.  With ``exact`` every root is handled in its own
    number field; otherwise roots outside Q(omega) are classified numerically.
    """
    d = discriminant_form(f)
    tasks = _weierstrass_tasks(f, "t", exact=exact)
    deg = d.total_degree()
    if deg < 12:
        tasks += _weierstrass_tasks(f.at_infinity(), "s", skip_zero=True, exact=exact)
    entries = _map(lambda args: _weierstrass_entry(*args, tol=tol), tasks)
    return SingularFiberCensus(tuple(entries), deg, genericity_check(f).generic)


# -- pencils of plane cubics ------------------------------------------------------------

P2 = PolyRing(("x", "y", "z"))
# affine charts of the plane: the coordinate set to 1 and the order of the two others
CHARTS = {"z": ("x", "y"), "y": ("x", "z"), "x": ("y", "z")}


@dataclass(frozen=True)
class CubicPencil:
    """The pencil lam1 * a - lam0 * b of plane cubics; t = lam0/lam1."""

    a: Polynomial
    b: Polynomial

    def __post_init__(self):
        a = self.a if isinstance(self.a, Polynomial) else P2(self.a)
        b = self.b if isinstance(self.b, Polynomial) else P2(self.b)
        a, b = a.change_ring(P2), b.change_ring(P2)
        for p in (a, b):
            if p.is_zero() or any(sum(e) != 3 for e in p.terms):
                raise DegenerateFibration("pencil members must be nonzero cubic forms")
        if not gcd(a, b).is_constant():
            raise DegenerateFibration("pencil members share a common factor: the base locus is not finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def member(self, base: str = "t") -> Polynomial:
        """a - t*b (or s*a - b at the chart at infinity) in (x, y, z, base)."""
        R = PolyRing(("x", "y", "z", base))
        a, b = self.a.change_ring(R), self.b.change_ring(R)
        p = R.gen(base)
        return a - p * b if base == "t" else p * a - b

    def chart_equation(self, chart: str, names: tuple[str, str], base: str = "t") -> Polynomial:
        """The member in the affine chart where ``chart`` = 1, coordinates renamed to ``names``."""
        F = self.member(base)
        R = PolyRing(tuple(names) + (base,))
        u, v = CHARTS[chart]
        return F.substitute({chart: R.one, u: R.gen(names[0]), v: R.gen(names[1]), base: R.gen(base)}, R)


def _chart_system(pencil: CubicPencil, chart: str, base: str) -> list[Polynomial]:
    """Singular points of the members in one chart (points already covered elsewhere excluded)."""
    names = ("X", "Y")
    F = pencil.chart_equation(chart, names, base)
    eqs = [F, F.derivative("X"), F.derivative("Y")]
    R = F.ring
    if chart == "y":
        eqs.append(R.gen("Y"))  # z = 0
    elif chart == "x":
        eqs += [R.gen("X"), R.gen("Y")]  # the point (1:0:0)
    return eqs


def _eliminant(eqs: Sequence[Polynomial], base: str) -> Polynomial | None:
    """Generator of the elimination ideal in the base variable, or None if the chart is empty."""
    G = groebner(eqs, LEX)
    if G.is_unit_ideal():
        return None
    R = PolyRing((base,))
    for g in G.elements:
        if set(g.variables_used()) <= {base}:
            return umonic(squarefree_part(g.change_ring(R)))
    raise EliminationFailed("singular points of the members do not lie over finitely many base points")


@dataclass(frozen=True)
class PencilDiscriminant:
    eliminant: Polynomial  # squarefree, in t
    roots: tuple[BasePoint, ...]
    at_infinity: bool
    chart_eliminants: dict
    flagged: tuple[BasePoint, ...] = ()

    @property
    def squarefree_roots(self) -> tuple[BasePoint, ...]:
        return self.roots

    @property
    def root_count(self) -> int:
        return len(self.roots)


def _discriminant_locus(pencil: CubicPencil):
    chart_elims = {}
    total = T_RING.one
    for chart in CHARTS:
        e = _eliminant(_chart_system(pencil, chart, "t"), "t")
        chart_elims[chart] = e
        if e is not None:
            total = total * udivmod(e, umonic(gcd(e, total)))[0]
    total = umonic(total)
    inf = False
    for chart in CHARTS:
        e = _eliminant(_chart_system(pencil, chart, "s"), "s")
        if e is not None and e.evaluate([0]) == 0:
            inf = True
    roots = [BasePoint(r, "t") for r in polynomial_roots(total)] if total.total_degree() > 0 else []
    if inf:
        roots.append(BasePoint(Root(0j, Fraction(0)), "s"))
    return total, tuple(roots), inf, chart_elims


def pencil_discriminant(pencil: CubicPencil, census: SingularFiberCensus | None = None) -> PencilDiscriminant:
    """Base points of the singular members, with the roots whose fiber-product germ is not a node flagged."""
    total, roots, inf, elims = _discriminant_locus(pencil)
    census = census or pencil_fiber_product_census(pencil)
    flagged = []
    for bp in roots:
        if any(e.base == bp and e.germ_class is not GermClass.NODE for e in census.entries):
            flagged.append(bp)
    return PencilDiscriminant(total, roots, inf, elims, tuple(flagged))


def _solve_exact(eqs: Sequence[Polynomial], names: Sequence[str]) -> list[tuple] | None:
    """All solutions over Q(omega) of a zero-dimensional system, or None if some are not in the tower."""
    if not eqs or all(p.is_zero() for p in eqs):
        raise EliminationFailed("positive-dimensional singular locus")
    ring = eqs[0].ring
    G = groebner(eqs, LEX)
    if G.is_unit_ideal():
        return []
    last = names[-1]
    uni = [g for g in G.elements if set(g.variables_used()) <= {last}]
    if not uni:
        raise EliminationFailed("positive-dimensional singular locus")
    R1 = PolyRing((last,), ring.field)
    out = []
    for root in polynomial_roots(uni[0].change_ring(R1)):
        if not root.is_exact:
            return None
        val = root.exact
        if len(names) == 1:
            out.append((val,))
            continue
        fld = QQ_OMEGA if isinstance(val, QOmega) or ring.field == QQ_OMEGA else QQ
        sub_ring = PolyRing(tuple(names[:-1]), fld)
        sub = [g.substitute({last: val}, ring.with_field(fld)).change_ring(sub_ring) for g in G.elements]
        sub = [p for p in sub if not p.is_zero()]
        if not sub:
            raise EliminationFailed("positive-dimensional singular locus")
        rest = _solve_exact(sub, names[:-1])
        if rest is None:
            return None
        out += [r + (val,) for r in rest]
    return out


def _complex_coeffs_in(p: Polynomial, var: str, values: dict) -> list[complex]:
    """Coefficients (ascending) of p as a polynomial in ``var`` after evaluating the other variables."""
    i = p.ring.index(var)
    out: dict[int, complex] = {}
    conv = p.ring.field.to_complex
    for e, c in p.terms.items():
        term = conv(c)
        for j, k in enumerate(e):
            if j != i and k:
                term *= complex(values[p.ring.variables[j]]) ** k
        out[e[i]] = out.get(e[i], 0) + term
    deg = max(out)
    return [out.get(k, 0) for k in range(deg + 1)]


def _solve_numeric(G: Sequence[Polynomial], names: Sequence[str], known: dict, tol: float = 1e-6) -> list[dict]:
    """Back-substitution through a lex basis with complex values, one variable at a time."""
    if not names:
        return [dict(known)]
    var = names[-1]
    pool = [g for g in G if var in g.variables_used() and set(g.variables_used()) <= set(known) | {var}]
    cands = None
    for g in sorted(pool, key=lambda p: p.degree(var)):
        coeffs = _complex_coeffs_in(g, var, known)
        scale = max(abs(c) for c in coeffs)
        while len(coeffs) > 1 and abs(coeffs[-1]) <= tol * scale:
            coeffs.pop()
        if len(coeffs) > 1:
            cands = list(np.roots(list(reversed(coeffs))))
            break
    if cands is None:
        raise EliminationFailed("could not isolate a coordinate numerically")
    out = []
    for z in cands:
        trial = dict(known)
        trial[var] = complex(z)
        ok = True
        for g in pool:
            vals = [complex(trial[v]) if v in trial else 0 for v in g.ring.variables]
            mag = max(abs(g.ring.field.to_complex(c)) for c in g.terms.values()) * max(1.0, max(abs(v) for v in vals)) ** g.total_degree()
            if abs(g.evaluate_complex(vals)) > 1e-5 * mag:
                ok = False
                break
        if ok and not any(all(abs(complex(trial[k]) - complex(o[k])) < 1e-7 for k in trial) for o in out):
            out.append(trial)
    result = []
    for t in out:
        result += _solve_numeric(G, names[:-1], t, tol)
    return result


@dataclass(frozen=True)
class FiberPoint:
    chart: str
    coords: tuple  # affine chart coordinates (X, Y)
    exact: bool


def fiber_singular_points(pencil: CubicPencil, bp: BasePoint) -> list[FiberPoint]:
    """Singular points of the member over a base point, exact when they lie in the tower."""
    base = bp.chart
    out = []
    for chart in CHARTS:
        eqs = _chart_system(pencil, chart, base)
        if bp.root.is_exact:
            val = bp.root.exact
            fld = QQ_OMEGA if isinstance(val, QOmega) else QQ
            R = PolyRing(("X", "Y"), fld)
            sub = [p.substitute({base: val}, p.ring.with_field(fld)).change_ring(R) for p in eqs]
            sols = _solve_exact(sub, ("X", "Y"))
            if sols is not None:
                out += [FiberPoint(chart, s, True) for s in sols]
                continue
        # numeric: lex basis with the base variable last, then Newton in mp precision
        G = groebner(eqs, LEX).elements
        if not G or any(not any(g.leading_monomial(LEX)) for g in G):
            continue
        sols = _solve_numeric(G, ("X", "Y"), {base: bp.root.value})
        for s in sols:
            start = [s["X"], s["Y"], bp.root.value]
            refined = newton_system(eqs[:3], start)
            pt = tuple(complex(c) for c in refined)
            if abs(pt[2] - bp.root.value) > 1e-8 * max(1.0, abs(bp.root.value)):
                continue
            out.append(FiberPoint(chart, (pt[0], pt[1]), False))
    return out


def _pencil_entries(pencil: CubicPencil, bp: BasePoint, tol: float = ROOT_TOL) -> list[CensusEntry]:
    points = fiber_singular_points(pencil, bp)
    base = bp.chart
    entries = []
    for p, q in product(points, points):
        f = pencil.chart_equation(p.chart, ("X", "Y"), base)
        g = pencil.chart_equation(q.chart, ("U", "V"), base)
        variables = ("X", "Y", "U", "V", base)
        if p.exact and q.exact and bp.root.is_exact:
            t0 = bp.root.exact
            fs = translate(f, tuple(p.coords) + (t0,))
            gs = translate(g, tuple(q.coords) + (t0,))
            _, report = classify_fiber_product(fs, gs, base)
            point = tuple(p.coords) + tuple(q.coords) + (t0,)
            entries.append(CensusEntry(bp, 1, report.germ_class, point, variables, True, None, report))
        else:
            point = tuple(complex(c) for c in p.coords) + tuple(complex(c) for c in q.coords) + (bp.root.value,)
            report = classify_fiber_product_numeric(f, g, dict(zip(variables, point)), base, tol)
            entries.append(CensusEntry(bp, 1, report.germ_class, point, variables, False, None, report))
    return entries


def pencil_fiber_product_census(pencil: CubicPencil, tol: float = ROOT_TOL) -> SingularFiberCensus:
    """One entry per singular point of the fiber self-product of the pencil's elliptic surface."""
    total, roots, inf, _ = _discriminant_locus(pencil)
    groups = _map(lambda bp: _pencil_entries(pencil, bp, tol), list(roots))
    entries = tuple(e for g in groups for e in g)
    return SingularFiberCensus(entries, None, None)


@dataclass(frozen=True)
class EulerReport:
    chi_X: int
    chi_resolution: int


def euler_from_census(census: SingularFiberCensus) -> EulerReport:
    """chi(X) = nu and chi of the small resolution = 2 nu for an all-nodal census."""
    if not census.all_nodes:
        raise NonNodalCensus("the census contains singularities other than nodes")
    nu = len(census.entries)
    return EulerReport(nu, 2 * nu)


__all__ = [
    "BasePoint",
    "CensusEntry",
    "CubicPencil",
    "EulerReport",
    "GenericityReport",
    "PencilDiscriminant",
    "SingularFiberCensus",
    "WeierstrassFibration",
    "discriminant_form",
    "euler_from_census",
    "fiber_singular_points",
    "genericity_check",
    "pencil_discriminant",
    "pencil_fiber_product_census",
    "thread_count",
    "weierstrass_census",
]
