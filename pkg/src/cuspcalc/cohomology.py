"""Dimension counting for coherent cohomology on projective spaces and on P^2 x P^2.

Three tools are combined: the Bott formulas for twisted forms on P^n, the
Kunneth formula on products, and a solver for long exact sequences of
finite-dimensional vector spaces.  The solver propagates rank-nullity
bounds and refuses to guess: a dimension left undetermined by exactness
raises :class:`AmbiguousChase` carrying the feasible interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Mapping, Sequence

from .errors import AmbiguousChase, InconsistentInput

INF = 10**18


def bott(p: int, q: int, n: int, a: int) -> int:
    """h^q(P^n, Omega^p(a))."""
    if not (0 <= p <= n and 0 <= q <= n):
        raise InconsistentInput(f"need 0 <= p, q <= n, got p={p}, q={q}, n={n}")
    if q == 0 and a > p:
        return comb(a + n - p, a) * comb(a - 1, p)
    if a == 0 and p == q:
        return 1
    if q == n and a < p - n:
        return comb(-a + p, -a) * comb(-a - 1, n - p)
    return 0


def structure_profile(n: int, a: int) -> list[int]:
    """[h^0, ..., h^n] of O_{P^n}(a)."""
    return [bott(0, q, n, a) for q in range(n + 1)]


def kunneth_dim(left: Sequence, right: Sequence, total_degree: int) -> int:
    """dim H^i of an exterior tensor product from the two factor profiles.

    Profiles are lists of (degree, dimension) pairs or plain lists indexed
    by degree.
    """
    lp, rp = _as_profile(left), _as_profile(right)
    return sum(d * rp.get(total_degree - j, 0) for j, d in lp.items())


def _as_profile(p) -> dict[int, int]:
    if isinstance(p, Mapping):
        return dict(p)
    items = list(p)
    if items and isinstance(items[0], tuple):
        return {i: d for i, d in items}
    return dict(enumerate(items))


# -- long exact sequences -----------------------------------------------------------


@dataclass
class ExactSequence:
    """A segment of a long exact sequence of vector spaces.

    ``terms`` are labels in order; ``known`` maps some labels to their
    dimensions.  The segment is preceded by 0 when ``left_zero`` and
    followed by 0 when ``right_zero``; otherwise the outer maps are free.
    ``zero_maps`` lists indices i whose outgoing map (term i to i+1) is
    known to vanish.
    """

    terms: list[str]
    known: dict[str, int]
    left_zero: bool = True
    right_zero: bool = False
    zero_maps: frozenset = frozenset()

    def solve(self) -> tuple[dict[str, tuple[int, int]], list[tuple[int, int]]]:
        """Tightest bounds for every term and every map rank."""
        n = len(self.terms)
        d = [(self.known[t], self.known[t]) if t in self.known else (0, INF) for t in self.terms]
        # r[i] is the rank of the map into term i; r[n] leaves the last term
        r = [(0, INF) for _ in range(n + 1)]
        if self.left_zero:
            r[0] = (0, 0)
        if self.right_zero:
            r[n] = (0, 0)
        for i in self.zero_maps:
            r[i + 1] = (0, 0)
        for _ in range(4 * n + 8):
            changed = False
            for i in range(n):
                # d_i = r_i + r_{i+1}, with every quantity non-negative
                lo = max(d[i][0], r[i][0] + r[i + 1][0])
                hi = min(d[i][1], r[i][1] + r[i + 1][1])
                a_lo = max(r[i][0], lo - r[i + 1][1])
                a_hi = min(r[i][1], hi - r[i + 1][0])
                b_lo = max(r[i + 1][0], lo - r[i][1])
                b_hi = min(r[i + 1][1], hi - r[i][0])
                new = ((lo, hi), (a_lo, a_hi), (b_lo, b_hi))
                if new != (d[i], r[i], r[i + 1]):
                    changed = True
                    d[i], r[i], r[i + 1] = new
                if lo > hi or a_lo > a_hi or b_lo > b_hi:
                    raise InconsistentInput(f"no exact sequence has these dimensions (at {self.terms[i]})")
            if not changed:
                break
        return dict(zip(self.terms, d)), r

    def dimension(self, term: str) -> int:
        bounds, _ = self.solve()
        lo, hi = bounds[term]
        if lo != hi:
            raise AmbiguousChase(f"exactness does not determine dim {term}: between {lo} and {_fmt(hi)}", (lo, hi))
        return lo

    def alternating_sum(self) -> int:
        """Sum of (-1)^i dim over a fully known segment bounded by zeros."""
        if not (self.left_zero and self.right_zero):
            raise InconsistentInput("alternating sums need a segment with zeros at both ends")
        return sum((-1) ** i * self.known[t] for i, t in enumerate(self.terms))


def _fmt(x: int) -> str:
    return "infinity" if x >= INF else str(x)


def check_exact_sequence(dims: Sequence[int]) -> bool:
    """Whether 0 -> V_1 -> ... -> V_n -> 0 can be exact, i.e. the alternating sum vanishes."""
    if len(dims) < 2:
        raise InconsistentInput("an exact sequence check needs at least two terms")
    if any(d < 0 for d in dims):
        raise InconsistentInput("dimensions are non-negative")
    return sum((-1) ** i * d for i, d in enumerate(dims)) == 0


# -- Euler sequence ---------------------------------------------------------------------


def euler_twist_dims(n: int, a: int, assume: Mapping[int, int] | None = None) -> list[int]:
    """[h^0, ..., h^n] of Theta_{P^n}(a) from 0 -> O(a) -> O(a+1)^(n+1) -> Theta(a) -> 0.

    ``assume`` supplies extra values h^i(Theta(a)) when exactness alone is
    not enough.
    """
    if n < 1:
        raise InconsistentInput("projective space of positive dimension required")
    lo, mid = structure_profile(n, a), structure_profile(n, a + 1)
    terms, known = [], {}
    for q in range(n + 1):
        for label, value in ((f"H{q}(O({a}))", lo[q]), (f"H{q}(O({a + 1}))^{n + 1}", (n + 1) * mid[q]), (f"H{q}(T({a}))", None)):
            terms.append(label)
            if value is not None:
                known[label] = value
    for q, v in (assume or {}).items():
        known[f"H{q}(T({a}))"] = v
    les = ExactSequence(terms, known, left_zero=True, right_zero=True)
    return [les.dimension(f"H{q}(T({a}))") for q in range(n + 1)]


def tangent_product_dims(a: int, b: int) -> list[int]:
    """[h^0..h^4] of Theta_P(a, b) on P = P^2 x P^2, where Theta_P = p1*Theta(a) + p2*Theta(b)."""
    oa, ob = structure_profile(2, a), structure_profile(2, b)
    ta, tb = euler_twist_dims(2, a), euler_twist_dims(2, b)
    return [kunneth_dim(ta, ob, i) + kunneth_dim(oa, tb, i) for i in range(5)]


def structure_product_dims(a: int, b: int) -> list[int]:
    oa, ob = structure_profile(2, a), structure_profile(2, b)
    return [kunneth_dim(oa, ob, i) for i in range(5)]


# -- the bicubic threefold ---------------------------------------------------------------


@dataclass(frozen=True)
class Entry:
    symbol: str
    degree: int | None
    value: int
    rule: str  # Bott, Kunneth, LES-chase, Euler-sequence, Hodge, Lefschetz, Poincare-duality, input
    detail: str = ""


@dataclass
class DimensionTable:
    entries: list[Entry] = field(default_factory=list)

    def add(self, symbol: str, degree: int | None, value: int, rule: str, detail: str = "", signed: bool = False) -> int:
        if value < 0 and not signed:
            raise InconsistentInput(f"negative dimension for {symbol}")
        self.entries.append(Entry(symbol, degree, value, rule, detail))
        return value

    def get(self, symbol: str, degree: int | None = None) -> int:
        for e in reversed(self.entries):
            if e.symbol == symbol and e.degree == degree:
                return e.value
        raise KeyError((symbol, degree))

    def provenance(self, symbol: str, degree: int | None = None) -> Entry:
        for e in reversed(self.entries):
            if e.symbol == symbol and e.degree == degree:
                return e
        raise KeyError((symbol, degree))

    def as_dict(self) -> list[dict]:
        return [
            {"symbol": e.symbol, "degree": e.degree, "value": e.value, "rule": e.rule, "detail": e.detail}
            for e in self.entries
        ]


# Calabi-Yau inputs for the smooth bicubic
CY_INPUTS = {"h10": 0, "h20": 0, "h30": 1}


def bicubic_report() -> DimensionTable:
    """h^1 of the tangent sheaf, b_3 and chi for a smooth (3,3) hypersurface W in P^2 x P^2."""
    t = DimensionTable()
    for a in (-3, 0, 3):
        for q in range(3):
            t.add(f"O_P2({a})", q, bott(0, q, 2, a), "Bott")
    for b in (0, -3):
        prof = euler_twist_dims(2, b)
        for q, v in enumerate(prof):
            t.add(f"T_P2({b})", q, v, "Euler-sequence", f"0 -> O({b}) -> O({b + 1})^3 -> T_P2({b}) -> 0")

    for q, v in enumerate(structure_product_dims(0, 0)):
        t.add("O_P", q, v, "Kunneth")
    for q, v in enumerate(structure_product_dims(3, 3)):
        t.add("O_P(3,3)", q, v, "Kunneth", "h0(O_P2(3)) * h0(O_P2(3))" if q == 0 else "")
    for a in (-3, 0):
        for q, v in enumerate(tangent_product_dims(a, a)):
            t.add(f"T_P({a},{a})", q, v, "Kunneth")

    # 0 -> O_P -> O_P(3,3) -> O_W(3,3) -> 0
    les = ExactSequence(
        ["H0(O_P)", "H0(O_P(3,3))", "H0(O_W(3,3))", "H1(O_P)"],
        {"H0(O_P)": t.get("O_P", 0), "H0(O_P(3,3))": t.get("O_P(3,3)", 0), "H1(O_P)": t.get("O_P", 1)},
    )
    t.add("O_W(3,3)", 0, les.dimension("H0(O_W(3,3))"), "LES-chase", "structure sequence twisted by (3,3)")

    # 0 -> T_P(-3,-3) -> T_P -> T_P|W -> 0
    names = [f"H{q}({s})" for q in range(3) for s in ("T_P(-3,-3)", "T_P", "T_P|W")]
    known = {}
    for q in range(3):
        known[f"H{q}(T_P(-3,-3))"] = t.get("T_P(-3,-3)", q)
        known[f"H{q}(T_P)"] = t.get("T_P(0,0)", q)
    les = ExactSequence(names, known)
    for q in range(2):
        t.add("T_P|W", q, les.dimension(f"H{q}(T_P|W)"), "LES-chase", "structure sequence tensored with T_P")

    # h0(T_W) = h^{2,0} by T_W = Omega^2_W on a Calabi-Yau threefold
    t.add("T_W", 0, CY_INPUTS["h20"], "input", "Calabi-Yau: T_W = Omega^2_W and h^{2,0} = 0")

    # 0 -> T_W -> T_P|W -> O_W(3,3) -> 0
    les = ExactSequence(
        ["H0(T_W)", "H0(T_P|W)", "H0(O_W(3,3))", "H1(T_W)", "H1(T_P|W)"],
        {
            "H0(T_W)": t.get("T_W", 0),
            "H0(T_P|W)": t.get("T_P|W", 0),
            "H0(O_W(3,3))": t.get("O_W(3,3)", 0),
            "H1(T_P|W)": t.get("T_P|W", 1),
        },
    )
    h1 = t.add("T_W", 1, les.dimension("H1(T_W)"), "LES-chase", "normal sequence of W in P")

    # Hodge and Lefschetz bookkeeping
    h21 = t.add("h21(W)", None, h1, "Hodge", "H^1(T_W) = H^1(Omega^2_W)")
    t.add("b3(W)", None, 2 * (CY_INPUTS["h30"] + h21), "Hodge", "b3 = 2(h30 + h21)")
    p2 = [1, 0, 1, 0, 1]
    betti_p = [kunneth_dim(p2, p2, i) for i in range(9)]
    betti = {}
    for i in range(3):
        betti[i] = t.add(f"b{i}(W)", None, betti_p[i], "Lefschetz", "b_i(W) = b_i(P) for i < 3")
    for i in range(4, 7):
        betti[i] = t.add(f"b{i}(W)", None, betti[6 - i], "Poincare-duality", "b_i = b_{6-i}")
    betti[3] = t.get("b3(W)")
    t.add("chi(W)", None, sum((-1) ** i * betti[i] for i in range(7)), "Hodge", "alternating sum of Betti numbers", signed=True)
    return t


def bicubic_moduli_count() -> int:
    """Independent route: projective moduli (10*10 - 1) - dim PGL(3) x PGL(3)."""
    h0_cubics = bott(0, 0, 2, 3)
    pgl3 = 3 * 3 - 1
    return (h0_cubics * h0_cubics - 1) - 2 * pgl3


__all__ = [
    "AmbiguousChase",
    "DimensionTable",
    "Entry",
    "ExactSequence",
    "bicubic_moduli_count",
    "bicubic_report",
    "bott",
    "check_exact_sequence",
    "euler_twist_dims",
    "kunneth_dim",
    "structure_product_dims",
    "structure_profile",
    "tangent_product_dims",
]
