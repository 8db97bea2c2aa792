"""Invariant bookkeeping across conifold and small geometric transitions.

A transition T(Xhat, X, Xtilde) has a small resolution Xhat, a singular
middle X and a smoothing Xtilde.  Betti, Hodge and Euler numbers of the
three are tied together by integers (k, c', c''), and knowing one vertex
plus the integers gives the other two.  The table of the cuspidal fiber
product and its neighbours is rebuilt from a handful of seeds by chaining
such propagations.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

from .cohomology import ExactSequence, bicubic_report, bott, check_exact_sequence
from .errors import InconsistentInput, InternalInconsistency, ParityViolation, UnknownResolutionStructure
from .germ import GermClass


@dataclass(frozen=True)
class VarietyInvariants:
    name: str
    dimdef: int
    b2: int
    b3: int
    b4: int
    rho: int
    chi: int
    smooth: bool
    calabi_yau: bool = True

    @property
    def defect(self) -> int:
        return self.b4 - self.b2

    @property
    def h11(self) -> int:
        return self.rho

    @property
    def h21(self) -> int:
        return self.dimdef

    def check(self) -> VarietyInvariants:
        if min(self.dimdef, self.b2, self.b3, self.b4, self.rho) < 0:
            raise InconsistentInput(f"{self.name}: negative invariant")
        if self.smooth and self.calabi_yau:
            if not (self.rho == self.b2 == self.b4):
                raise InternalInconsistency(f"{self.name}: smooth Calabi-Yau needs rho = b2 = b4")
            if self.chi != 2 * (self.rho - self.dimdef):
                raise InternalInconsistency(f"{self.name}: chi != 2(h11 - h21)")
            if self.b3 != 2 * (1 + self.dimdef):
                raise InternalInconsistency(f"{self.name}: b3 != 2(1 + h21)")
        return self

    def row(self) -> tuple:
        return (self.name, self.dimdef, self.b3, self.rho, self.b4, self.defect, self.chi)


def smooth_calabi_yau(name: str, h11: int, h21: int) -> VarietyInvariants:
    return VarietyInvariants(name, h21, h11, 2 * (1 + h21), h11, h11, 2 * (h11 - h21), True).check()


@dataclass(frozen=True)
class TransitionEdge:
    """Integers of a small transition: n exceptional components, global Milnor number m."""

    n: int
    m: int
    k: int

    def __post_init__(self):
        if min(self.n, self.m, self.k) < 0:
            raise InconsistentInput("n, m, k must be non-negative")
        if self.k > self.n or self.k > self.m:
            raise InconsistentInput(f"k = {self.k} exceeds n = {self.n} or m = {self.m}")
        if (self.c_prime + self.c_second) % 2:
            raise ParityViolation(f"c' + c'' = {self.c_prime + self.c_second} is odd")

    @property
    def c_prime(self) -> int:
        return self.n - self.k

    @property
    def c_second(self) -> int:
        return self.m - self.k

    @property
    def c(self) -> int:
        return (self.c_prime + self.c_second) // 2

    @classmethod
    def conifold(cls, N: int, k: int) -> TransitionEdge:
        return cls(N, N, k)

    def compose(self, other: TransitionEdge) -> TransitionEdge:
        """Integers of two transitions with disjoint singular sets performed together."""
        return TransitionEdge(self.n + other.n, self.m + other.m, self.k + other.k)


@dataclass(frozen=True)
class Transition:
    resolution: VarietyInvariants
    singular: VarietyInvariants
    smoothing: VarietyInvariants
    edge: TransitionEdge


def _names(names, default):
    return tuple(names) if names else default


def propagate_from_resolution(source: VarietyInvariants, edge: TransitionEdge, names=None) -> Transition:
    """Singular middle and smoothing from the small resolution."""
    sing_name, smooth_name = _names(names, (source.name + "_0", source.name + "~"))
    k, c1, c2 = edge.k, edge.c_prime, edge.c_second
    b2_mid = source.b2 - k
    if b2_mid < 0:
        raise InconsistentInput(f"k = {k} exceeds b2 = {source.b2}")
    smooth = VarietyInvariants(
        smooth_name, source.dimdef + edge.c, b2_mid, source.b3 + c1 + c2, source.b4 - k, source.rho - k,
        source.chi - edge.n - edge.m, True,
    ).check()
    sing = VarietyInvariants(
        sing_name, smooth.dimdef, b2_mid, source.b3 + c1, source.b4, smooth.rho, source.chi - edge.n, False,
    ).check()
    return Transition(source, sing, smooth, edge)


def propagate_from_smoothing(target: VarietyInvariants, edge: TransitionEdge, names=None) -> Transition:
    """Small resolution and singular middle from the smoothing."""
    res_name, sing_name = _names(names, (target.name + "^", target.name + "_0"))
    k, c1, c2 = edge.k, edge.c_prime, edge.c_second
    if target.dimdef < edge.c or target.b3 < c1 + c2:
        raise InconsistentInput("the smoothing has too few complex moduli for these integers")
    sing = VarietyInvariants(
        sing_name, target.dimdef, target.b2, target.b3 - c2, target.b4 + k, target.rho, target.chi + edge.m, False,
    ).check()
    res = VarietyInvariants(
        res_name, target.dimdef - edge.c, target.b2 + k, target.b3 - c1 - c2, target.b4 + k, target.rho + k,
        target.chi + edge.n + edge.m, True,
    ).check()
    return Transition(res, sing, target, edge)


def conifold_propagate(source: VarietyInvariants, N: int, k: int, names=None):
    """(X, Xtilde) from Xhat for a conifold transition with N nodes."""
    if k > N:
        raise InconsistentInput(f"k = {k} exceeds the node count N = {N}")
    t = propagate_from_resolution(source, TransitionEdge.conifold(N, k), names)
    return t.singular, t.smoothing


def small_transition_propagate(source: VarietyInvariants, n: int, m: int, k: int, names=None):
    """(X, Xtilde) from Xhat for a small transition with integers (n, m, k)."""
    t = propagate_from_resolution(source, TransitionEdge(n, m, k), names)
    return t.singular, t.smoothing


def conifold_k_from_moduli(N: int, h21_smoothing: int, h21_resolution: int) -> int:
    """k = N - c where c is the jump of complex moduli."""
    c = h21_smoothing - h21_resolution
    if not 0 <= c <= N:
        raise InconsistentInput(f"moduli jump {c} is not between 0 and N = {N}")
    return N - c


# -- singularity budgets ---------------------------------------------------------------------

# exceptional components and Milnor number of the small resolution of each germ class
RESOLUTION_DATA = {GermClass.NODE: (1, 1), GermClass.CUSP: (2, 4)}


def milnor_budget(census) -> tuple[int, int]:
    """(n, m): total exceptional components and global Milnor number."""
    classes = _classes(census)
    n = m = 0
    for cls in classes:
        if cls not in RESOLUTION_DATA:
            raise UnknownResolutionStructure(f"no small-resolution data for {cls.value}")
        dn, dm = RESOLUTION_DATA[cls]
        n += dn
        m += dm
    return n, m


def _classes(census) -> list[GermClass]:
    entries = getattr(census, "entries", census)
    return [getattr(e, "germ_class", e) for e in entries]


def moduli_count_fiber_product(dimdef_Y: int = 8, sextic_roots: int = 6) -> int:
    """2 dimdef(Y) + h0(O_P1(6)) - dim GL(2)."""
    return 2 * dimdef_Y + bott(0, 0, 1, sextic_roots) - 2 * 2


# -- the table --------------------------------------------------------------------------------


@dataclass(frozen=True)
class TableSeeds:
    h21_W: int = 83
    chi_W: int = -162
    dimdef_X: int = 19
    nodes_W: int = 81  # the 9 x 9 pairs of base points of the cubic pencil
    nodes_Xk: int = 12
    cusps_X: int = 6
    rel_picard_T1: int = 1
    rel_picard_T2: int = 1

    @classmethod
    def computed(cls) -> TableSeeds:
        """Seeds taken from the cohomology chase and the moduli count."""
        rep = bicubic_report()
        return cls(h21_W=rep.get("T_W", 1), chi_W=rep.get("chi(W)"), dimdef_X=moduli_count_fiber_product())


@dataclass
class TableDerivation:
    rows: list[VarietyInvariants]
    transitions: dict[str, Transition]
    steps: list[str] = field(default_factory=list)

    def row(self, name: str) -> VarietyInvariants:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)


ROW_ORDER = ("Xhat", "Z", "Ztilde", "X", "X_k", "Xtilde", "W_0", "W_k", "W_t", "Wtilde")
COLUMNS = ("Variety", "dimdef", "b3", "rho", "b4", "defect", "chi")


def derive_table(seeds: TableSeeds | None = None) -> TableDerivation:
    s = seeds or TableSeeds.computed()
    steps = []
    if s.chi_W % 2:
        raise ParityViolation("chi of a Calabi-Yau threefold is even")
    W = smooth_calabi_yau("Wtilde", s.h21_W + s.chi_W // 2, s.h21_W)
    steps.append(f"Wtilde: h21 = {s.h21_W}, h11 = h21 + chi/2 = {W.rho}")

    k3 = conifold_k_from_moduli(s.nodes_W, s.h21_W, s.dimdef_X)
    T3 = propagate_from_smoothing(W, TransitionEdge.conifold(s.nodes_W, k3), ("Xtilde", "W_t"))
    steps.append(f"T3: N = {s.nodes_W}, c = {s.h21_W} - {s.dimdef_X} = {T3.edge.c}, k = {k3}")

    T2 = propagate_from_smoothing(T3.resolution, TransitionEdge.conifold(s.nodes_Xk, s.rel_picard_T2), ("Ztilde", "X_k"))
    steps.append(f"T2: N = {s.nodes_Xk}, k = {s.rel_picard_T2}, c = {T2.edge.c}")

    T1 = propagate_from_smoothing(T2.resolution, TransitionEdge.conifold(s.cusps_X, s.rel_picard_T1), ("Xhat", "Z"))
    steps.append(f"T1: N = {s.cusps_X}, k = {s.rel_picard_T1}, c = {T1.edge.c}")

    T23 = propagate_from_smoothing(W, T2.edge.compose(T3.edge), ("Ztilde", "W_k"))
    steps.append(f"T2 o T3: N = {T23.edge.n}, k = {T23.edge.k}, c = {T23.edge.c}")
    _same(T23.resolution, T2.resolution, "T2 o T3")

    n, m = milnor_budget([GermClass.CUSP] * s.cusps_X)
    T12 = propagate_from_smoothing(T3.resolution, TransitionEdge(n, m, s.rel_picard_T1 + s.rel_picard_T2), ("Xhat", "X"))
    steps.append(f"T1 o T2: n = {n}, m = {m}, k = {T12.edge.k}, c' = {T12.edge.c_prime}, c'' = {T12.edge.c_second}")
    _same(T12.resolution, T1.resolution, "T1 o T2")

    T123 = propagate_from_smoothing(W, T12.edge.compose(T3.edge), ("Xhat", "W_0"))
    steps.append(f"T1 o T2 o T3: n = {T123.edge.n}, m = {T123.edge.m}, k = {T123.edge.k}")
    _same(T123.resolution, T1.resolution, "T1 o T2 o T3")

    by_name = {v.name: v for t in (T1, T2, T3, T23, T12, T123) for v in (t.resolution, t.singular, t.smoothing)}
    rows = [by_name[name] for name in ROW_ORDER]
    transitions = {"T1": T1, "T2": T2, "T3": T3, "T2oT3": T23, "T1oT2": T12, "T1oT2oT3": T123}
    return TableDerivation(rows, transitions, steps)


def _same(a: VarietyInvariants, b: VarietyInvariants, edge: str):
    if replace(a, name=b.name) != b:
        raise InternalInconsistency(f"composition {edge} is not coherent: {a} vs {b}")


def namikawa_table(seeds: TableSeeds | None = None) -> list[VarietyInvariants]:
    return derive_table(seeds).rows


def format_table(rows: Iterable[VarietyInvariants], with_b2: bool = False) -> str:
    header = list(COLUMNS) + (["b2 (derived)"] if with_b2 else [])
    body = [[str(x) for x in r.row()] + ([str(r.b2)] if with_b2 else []) for r in rows]
    widths = [max(len(h), *(len(b[i]) for b in body)) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) if i == 0 else h.rjust(w) for i, (h, w) in enumerate(zip(header, widths)))]
    for b in body:
        lines.append("  ".join(x.ljust(w) if i == 0 else x.rjust(w) for i, (x, w) in enumerate(zip(b, widths))))
    return "\n".join(lines)


# -- local-to-global diagrams -------------------------------------------------------------------


@dataclass(frozen=True)
class DiagramRow:
    name: str
    terms: tuple[str, ...]
    dims: tuple[int, ...]

    @property
    def exact(self) -> bool:
        return check_exact_sequence(self.dims)


def local_global_rows(rows: list[VarietyInvariants] | None = None, cusp_tau: int = 4, node_tau: int = 1,
                      resolved_cusp_dimdef: int = 1, cusps: int = 6) -> list[DiagramRow]:
    """The four rows comparing global and local deformations of X and Z.

    Unknown terms are solved from exactness and the derived values must
    agree with the table: T2 of X and of Z equal their Picard numbers.
    """
    rows = rows or namikawa_table()
    get = {r.name: r for r in rows}
    Xhat, X, Z = get["Xhat"], get["X"], get["Z"]
    nodes_Z = Xhat.chi - Z.chi

    def chase(name, terms, known, zero_maps=()):
        les = ExactSequence(list(terms), known, left_zero=True, right_zero=True, zero_maps=frozenset(zero_maps))
        dims = tuple(les.dimension(t) for t in terms)
        return DiagramRow(name, tuple(terms), dims)

    T2hat = Xhat.rho  # T2 of Xhat = H^2(Theta) = H^{2,2}
    top_X = chase(
        "X, global", ("H1(T_X)", "T1(Xhat)", "H0(R1)", "H2(T_X)", "T2(Xhat)"),
        {"T1(Xhat)": Xhat.dimdef, "H0(R1)": cusps * resolved_cusp_dimdef, "T2(Xhat)": T2hat},
        zero_maps=(1,),
    )
    h1, h2 = top_X.dims[0], top_X.dims[3]
    bottom_X = chase(
        "X, local", ("H1(T_X)", "T1(X)", "T1_loc(X)", "H2(T_X)", "T2(X)"),
        {"H1(T_X)": h1, "T1(X)": X.dimdef, "T1_loc(X)": cusps * cusp_tau, "H2(T_X)": h2},
    )
    top_Z = chase(
        "Z, global", ("H1(T_Z)", "T1(Xhat)", "H0(R1)", "H2(T_Z)", "T2(Xhat)"),
        {"T1(Xhat)": Xhat.dimdef, "H0(R1)": 0, "T2(Xhat)": T2hat},
    )
    bottom_Z = chase(
        "Z, local", ("H1(T_Z)", "T1(Z)", "T1_loc(Z)", "H2(T_Z)", "T2(Z)"),
        {"H1(T_Z)": top_Z.dims[0], "T1(Z)": Z.dimdef, "T1_loc(Z)": nodes_Z * node_tau, "H2(T_Z)": top_Z.dims[3]},
    )
    for row, var in ((bottom_X, X), (bottom_Z, Z)):
        if row.dims[-1] != var.rho:
            raise InternalInconsistency(f"{row.name}: T2 = {row.dims[-1]} but rho = {var.rho}")
    return [top_X, bottom_X, top_Z, bottom_Z]


__all__ = [
    "COLUMNS",
    "DiagramRow",
    "ROW_ORDER",
    "TableDerivation",
    "TableSeeds",
    "Transition",
    "TransitionEdge",
    "VarietyInvariants",
    "check_exact_sequence",
    "conifold_k_from_moduli",
    "conifold_propagate",
    "derive_table",
    "format_table",
    "local_global_rows",
    "milnor_budget",
    "moduli_count_fiber_product",
    "namikawa_table",
    "propagate_from_resolution",
    "propagate_from_smoothing",
    "small_transition_propagate",
    "smooth_calabi_yau",
]
