"""Gröbner bases, Mora standard bases and quotient dimensions.

Global orders use Buchberger's algorithm with the sugar strategy and the
Gebauer-Möller pair criteria.  The local order uses the same pair handling
with Mora's tangent-cone normal form, so the resulting standard basis
describes the localization at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .algebra.orders import DEGREVLEX, MonomialOrder
from .algebra.polynomial import PolyRing, Polynomial
from .errors import GlobalOrderRejected, InfiniteDimensional, LocalOrderRejected


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    __str__ = __repr__


INFINITE = _Infinite()


@dataclass(frozen=True)
class Ideal:
    generators: tuple[Polynomial, ...]

    def __init__(self, generators: Iterable[Polynomial]):
        gens = tuple(generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator (use 0 for the zero ideal)")
        ring = gens[0].ring
        gens = tuple(g if g.ring == ring else ring(g) for g in gens)
        object.__setattr__(self, "generators", gens)

    @property
    def ring(self) -> PolyRing:
        return self.generators[0].ring

    def __add__(self, other: Ideal) -> Ideal:
        return Ideal(self.generators + other.generators)


@dataclass(frozen=True)
class StandardBasis:
    ideal: Ideal
    order: MonomialOrder
    elements: tuple[Polynomial, ...]

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def leading_monomials(self) -> tuple[tuple[int, ...], ...]:
        return tuple(g.leading_monomial(self.order) for g in self.elements)

    def is_unit_ideal(self) -> bool:
        return any(not any(e) for e in self.leading_monomials)


@dataclass(frozen=True)
class QuotientBasis:
    dimension: object  # int or INFINITE
    monomials: tuple[tuple[int, ...], ...] | None

    @property
    def finite(self) -> bool:
        return self.dimension is not INFINITE


# -- internal representation ----------------------------------------------------
#
# A basis element is a list [lm, terms, sugar, ecart]; terms map exponents to
# coefficients and the leading coefficient is always 1.


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Engine:
    def __init__(self, ring: PolyRing, order: MonomialOrder):
        self.ring = ring
        self.key = order.key
        self.local = not order.is_global
        self.one = ring.field.one
        # Noether bound: once set, every monomial of this degree or more lies in
        # the (local) ideal and terms of such degree are discarded
        self.noether: int | None = None

    def lm(self, terms):
        return max(terms, key=self.key)

    def make(self, terms: dict, sugar: int):
        lm = self.lm(terms)
        lc = terms[lm]
        if lc != 1:
            inv = self.one / lc
            terms = {e: c * inv for e, c in terms.items()}
        deg = max(sum(e) for e in terms)
        return [lm, terms, sugar, deg - sum(lm)]

    def axpy(self, terms: dict, c, shift, other: dict):
        """terms -= c * x^shift * other, in place."""
        bound = self.noether
        for e, v in other.items():
            pe = tuple(a + b for a, b in zip(e, shift))
            if bound is not None and sum(pe) >= bound:
                continue
            cur = terms.get(pe)
            if cur is None:
                terms[pe] = -c * v
            else:
                cur = cur - c * v
                if cur:
                    terms[pe] = cur
                else:
                    del terms[pe]

    def spoly(self, f, g):
        l = _lcm(f[0], g[0])
        sf, sg = _sub(l, f[0]), _sub(l, g[0])
        terms = {tuple(a + b for a, b in zip(e, sf)): c for e, c in f[1].items()}
        self.axpy(terms, self.one, sg, g[1])
        sugar = max(f[2] + sum(sf), g[2] + sum(sg))
        return terms, sugar

    def top_reduce(self, terms: dict, sugar: int, basis):
        """Global top reduction until the leading monomial is irreducible."""
        key = self.key
        while terms:
            lm = max(terms, key=key)
            for g in basis:
                if _divides(g[0], lm):
                    c = terms[lm]
                    shift = _sub(lm, g[0])
                    self.axpy(terms, c, shift, g[1])
                    sugar = max(sugar, g[2] + sum(shift))
                    break
            else:
                return terms, sugar
        return terms, sugar

    def tail_reduce(self, terms: dict, basis):
        key = self.key
        done: dict = {}
        while terms:
            lm = max(terms, key=key)
            for g in basis:
                if _divides(g[0], lm):
                    self.axpy(terms, terms[lm], _sub(lm, g[0]), g[1])
                    break
            else:
                done[lm] = terms.pop(lm)
        return done

    def truncate(self, terms: dict) -> dict:
        k = self.noether
        return {e: c for e, c in terms.items() if sum(e) < k}

    def set_noether(self, basis: list):
        """Install the Noether bound when the leading monomials leave a finite staircase."""
        stair = _staircase([g[0] for g in basis], self.ring.ngens)
        if stair is None:
            return
        k = 1 + max((sum(e) for e in stair), default=-1)
        if self.noether is not None and self.noether <= k:
            return
        self.noether = k
        for g in basis:
            if sum(g[0]) >= k:
                g[1] = {g[0]: self.one}
            else:
                g[1] = self.truncate(g[1])
            g[3] = max(sum(e) for e in g[1]) - sum(g[0])

    def mora_reduce(self, terms: dict, sugar: int, basis):
        """Mora's normal form with ecart: a weak normal form for local orders."""
        key = self.key
        T = list(basis)
        if self.noether is not None:
            terms = self.truncate(terms)
        while terms:
            lm = max(terms, key=key)
            best = None
            for g in T:
                if _divides(g[0], lm) and (best is None or g[3] < best[3]):
                    best = g
                    if g[3] == 0:
                        break
            if best is None:
                return terms, sugar
            ecart_h = max(sum(e) for e in terms) - sum(lm)
            if best[3] > ecart_h:
                T.append(self.make(dict(terms), sugar))
            c = terms[lm]
            lc_best = best[1][best[0]]
            shift = _sub(lm, best[0])
            self.axpy(terms, c / lc_best, shift, best[1])
            sugar = max(sugar, best[2] + sum(shift))
        return terms, sugar


def _update(basis: list, pairs: list, h):
    """Gebauer-Möller update for a new basis element ``h``."""
    lh = h[0]
    candidates = [(g, _lcm(g[0], lh)) for g in basis]
    chosen = []
    while candidates:
        g, l = candidates.pop()
        if _coprime(g[0], lh) or not any(
            _divides(l2, l) for _, l2 in candidates + [(c[0], c[2]) for c in chosen]
        ):
            chosen.append((g, h, l))
    fresh = [p for p in chosen if not _coprime(p[0][0], lh)]
    pairs[:] = [
        (f, g, l)
        for f, g, l in pairs
        if not (_divides(lh, l) and _lcm(f[0], lh) != l and _lcm(g[0], lh) != l)
    ] + fresh
    basis.append(h)


def _base_order_check(order: MonomialOrder, want_global: bool):
    if want_global and not order.is_global:
        raise LocalOrderRejected("groebner needs a global order; use mora for local orders")
    if not want_global and order.is_global:
        raise GlobalOrderRejected("mora needs the local order NegDegRevLex")


def _run(ideal: Ideal, order: MonomialOrder, noether: int | None = None) -> list:
    ring = ideal.ring
    engine = _Engine(ring, order)
    engine.noether = noether
    inputs = [dict(g.terms) for g in ideal.generators if not g.is_zero()]
    if not inputs:
        return []
    basis: list = []
    pairs: list = []
    reduce = engine.mora_reduce if engine.local else engine.top_reduce
    start = sorted(
        (engine.make(t, max(sum(e) for e in t)) for t in inputs), key=lambda g: sum(g[0])
    )
    for g in start:
        terms, sugar = reduce(dict(g[1]), g[2], basis)
        if terms:
            h = engine.make(terms, sugar)
            if not any(h[0]):
                return [h]
            _update(basis, pairs, h)
            if engine.local:
                engine.set_noether(basis)
    while pairs:
        if engine.local:
            best = min(range(len(pairs)), key=lambda i: (sum(pairs[i][2]), i))
        else:
            best = min(
                range(len(pairs)),
                key=lambda i: (
                    max(pairs[i][0][2] + sum(_sub(pairs[i][2], pairs[i][0][0])), pairs[i][1][2] + sum(_sub(pairs[i][2], pairs[i][1][0]))),
                    engine.key(pairs[i][2]),
                ),
            )
        f, g, l = pairs.pop(best)
        if engine.noether is not None and sum(l) >= engine.noether:
            continue
        terms, sugar = engine.spoly(f, g)
        terms, sugar = reduce(terms, sugar, basis)
        if terms:
            h = engine.make(terms, sugar)
            if not any(h[0]):
                return [h]
            _update(basis, pairs, h)
            if engine.local:
                engine.set_noether(basis)
    return basis


def _minimalize(basis: list) -> list:
    out = []
    for i, g in enumerate(basis):
        if any(
            _divides(h[0], g[0]) and (h[0] != g[0] or j < i) for j, h in enumerate(basis) if j != i
        ):
            continue
        out.append(g)
    return out


def groebner(ideal: Ideal | Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> StandardBasis:
    """Reduced Gröbner basis with respect to a global order."""
    if not isinstance(ideal, Ideal):
        ideal = Ideal(ideal)
    _base_order_check(order, True)
    ring = ideal.ring
    engine = _Engine(ring, order)
    basis = _minimalize(_run(ideal, order))
    reduced = []
    for g in basis:
        others = [h for h in basis if h is not g]
        tail = dict(g[1])
        lead = tail.pop(g[0])
        tail = engine.tail_reduce(tail, others)
        tail[g[0]] = lead
        reduced.append(Polynomial(ring, tail))
    reduced.sort(key=lambda p: order.key(p.leading_monomial(order)))
    return StandardBasis(ideal, order, tuple(reduced))


def mora(ideal: Ideal | Sequence[Polynomial], order: MonomialOrder | None = None) -> StandardBasis:
    """Minimal standard basis for the local order (localization at the origin)."""
    from .algebra.orders import NEGDEGREVLEX

    if not isinstance(ideal, Ideal):
        ideal = Ideal(ideal)
    order = order or NEGDEGREVLEX
    _base_order_check(order, False)
    basis = _minimalize(_run(ideal, order))
    elems = tuple(Polynomial(ideal.ring, dict(g[1])) for g in basis)
    elems = tuple(sorted(elems, key=lambda p: order.key(p.leading_monomial(order)), reverse=True))
    return StandardBasis(ideal, order, elems)


def standard_basis(ideal: Ideal | Sequence[Polynomial], order: MonomialOrder) -> StandardBasis:
    return groebner(ideal, order) if order.is_global else mora(ideal, order)


def normal_form(f: Polynomial, sb: StandardBasis) -> Polynomial:
    """Full normal form (global) or Mora weak normal form (local)."""
    engine = _Engine(sb.ring, sb.order)
    basis = [engine.make(dict(g.terms), g.total_degree()) for g in sb.elements if not g.is_zero()]
    if engine.local:
        terms, _ = engine.mora_reduce(dict(f.terms), f.total_degree(), basis)
    else:
        terms = engine.tail_reduce(dict(f.terms), basis)
    return Polynomial(sb.ring, terms)


def reduces_to_zero(f: Polynomial, sb: StandardBasis) -> bool:
    return normal_form(f, sb).is_zero()


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    fe, fc = f.leading_term(order)
    ge, gc = g.leading_term(order)
    l = _lcm(fe, ge)
    one = f.ring.field.one
    return f.mul_term(_sub(l, fe), one / fc) - g.mul_term(_sub(l, ge), one / gc)


def _staircase(leading: Sequence[tuple[int, ...]], n: int):
    """Monomials outside the monomial ideal generated by ``leading``, or None if infinite."""
    if any(not any(e) for e in leading):
        return ()
    bounds = []
    for i in range(n):
        pure = [e[i] for e in leading if e[i] and all(e[j] == 0 for j in range(n) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []
    for exp in product(*(range(b) for b in bounds)):
        if not any(_divides(l, exp) for l in leading):
            out.append(exp)
    return tuple(out)


def quotient_dimension(sb: StandardBasis) -> object:
    """Dimension of ring/ideal (global order) or of the local ring quotient (local order)."""
    stair = _staircase(sb.leading_monomials, sb.ring.ngens)
    return INFINITE if stair is None else len(stair)


def monomial_basis(sb: StandardBasis) -> QuotientBasis:
    stair = _staircase(sb.leading_monomials, sb.ring.ngens)
    if stair is None:
        raise InfiniteDimensional("quotient is infinite dimensional")
    if sb.order.is_global:
        ordered = tuple(sorted(stair, key=sb.order.key))
    else:
        ordered = tuple(sorted(stair, key=sb.order.key, reverse=True))
    return QuotientBasis(len(ordered), ordered)


def maximal_ideal_power(ring: PolyRing, k: int) -> list[Polynomial]:
    n = ring.ngens

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    return [ring.monomial(e) for e in compositions(k, n)]


def truncated_dimension(ideal: Ideal | Sequence[Polynomial], k: int) -> int:
    """dim ring/(ideal + m^k), computed with a global Gröbner basis."""
    if not isinstance(ideal, Ideal):
        ideal = Ideal(ideal)
    big = Ideal(ideal.generators + tuple(maximal_ideal_power(ideal.ring, k)))
    return quotient_dimension(groebner(big, DEGREVLEX))


def _count_below(leading: Sequence[tuple[int, ...]], n: int, k: int) -> int:
    """Monomials of degree < k outside the monomial ideal generated by ``leading``."""
    count = 0
    for d in range(k):
        for exp in _compositions(d, n):
            if not any(_divides(l, exp) for l in leading):
                count += 1
    return count


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def local_truncated_dimension(ideal: Ideal | Sequence[Polynomial], k: int) -> int:
    """dim of the local quotient by ideal + m^k, from Mora's algorithm with Noether bound k."""
    from .algebra.orders import NEGDEGREVLEX

    if not isinstance(ideal, Ideal):
        ideal = Ideal(ideal)
    basis = _run(ideal, NEGDEGREVLEX, noether=k)
    return _count_below([g[0] for g in basis], ideal.ring.ngens, k)


def local_dimension(ideal: Ideal | Sequence[Polynomial], k_max: int = 24) -> tuple[object, list[int]]:
    """Local quotient dimension by truncated standard bases, stopping at stabilization.

    Like :func:`truncation_oracle` but each truncation is a local computation.
    Returns (value, sequence) with value ``None`` if unstable up to ``k_max``.
    """
    seq: list[int] = []
    for k in range(1, k_max + 1):
        seq.append(local_truncated_dimension(ideal, k))
        if len(seq) >= 2 and seq[-1] == seq[-2]:
            return seq[-1], seq
    return None, seq


def truncation_oracle(ideal: Ideal | Sequence[Polynomial], k_max: int = 8) -> tuple[object, list[int]]:
    """Local dimension from the truncations I + m^k.

    Two equal consecutive values certify stabilization (Nakayama), and the
    stable value is the local quotient dimension.  Returns (value, sequence);
    the value is ``None`` when no stabilization was seen up to ``k_max``.
    """
    seq: list[int] = []
    for k in range(1, k_max + 1):
        seq.append(truncated_dimension(ideal, k))
        if len(seq) >= 2 and seq[-1] == seq[-2]:
            return seq[-1], seq
    return None, seq
