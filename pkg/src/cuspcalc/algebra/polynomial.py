"""Sparse multivariate polynomials over the exact coefficient tower."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import DimensionMismatch, UnknownVariable
from .fields import QQ, common_field
from .orders import DEGREVLEX, MonomialOrder


@dataclass(frozen=True)
class PolyRing:
    variables: tuple[str, ...]
    field: object = QQ

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable names in {self.variables}")

    @property
    def ngens(self) -> int:
        return len(self.variables)

    def index(self, var: str | int) -> int:
        if isinstance(var, int):
            if 0 <= var < self.ngens:
                return var
            raise UnknownVariable(f"variable index {var} out of range")
        try:
            return self.variables.index(var)
        except ValueError:
            raise UnknownVariable(f"unknown variable {var!r}; ring has {self.variables}") from None

    def gen(self, var: str | int) -> Polynomial:
        i = self.index(var)
        exp = tuple(1 if j == i else 0 for j in range(self.ngens))
        return Polynomial(self, {exp: self.field.one})

    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.gen(i) for i in range(self.ngens))

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.constant(self.field.one)

    def constant(self, c) -> Polynomial:
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.ngens: c} if c else {})

    def monomial(self, exp: tuple[int, ...], c=1) -> Polynomial:
        c = self.field.convert(c)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def from_terms(self, terms: Mapping[tuple[int, ...], object]) -> Polynomial:
        conv = self.field.convert
        out = {}
        for e, c in terms.items():
            c = conv(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def __call__(self, x) -> Polynomial:
        if isinstance(x, Polynomial):
            return x.change_ring(self)
        if isinstance(x, str):
            from .parse import parse_polynomial

            return parse_polynomial(x, self)
        return self.constant(x)

    def with_field(self, field) -> PolyRing:
        return PolyRing(self.variables, field)

    def with_variables(self, variables: Iterable[str]) -> PolyRing:
        return PolyRing(tuple(variables), self.field)

    def __repr__(self):
        return f"PolyRing({', '.join(self.variables)}; {self.field!r})"


def _add_exp(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


class Polynomial:
    """An immutable sparse polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring == self.ring:
                return self, other
            if other.ring.variables != self.ring.variables:
                raise DimensionMismatch(
                    f"rings differ: {self.ring.variables} vs {other.ring.variables}"
                )
            field = common_field(self.ring.field, other.ring.field)
            ring = self.ring.with_field(field)
            return self.change_ring(ring), other.change_ring(ring)
        try:
            return self, self.ring.constant(other)
        except (TypeError, ValueError):
            field = getattr(other, "field", None)
            if field is not None and self.ring.field == QQ:
                up = self.change_ring(self.ring.with_field(field))
                return up, up.ring.constant(other)
            if self.ring.field == QQ and hasattr(other, "a") and hasattr(other, "b"):
                from .fields import QQ_OMEGA

                up = self.change_ring(self.ring.with_field(QQ_OMEGA))
                return up, up.ring.constant(other)
            raise

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            a, b = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(a.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            a, b = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        try:
            a, b = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        try:
            a, b = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        if len(a.terms) < len(b.terms):
            a, b = b, a
        out: dict = {}
        for e2, c2 in b.terms.items():
            for e1, c1 in a.terms.items():
                e = _add_exp(e1, e2)
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    out[e] = c
                else:
                    out[e] = s + c
        return Polynomial(a.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant():
                return NotImplemented
            other = other.constant_coeff()
        inv = self.ring.field.one / self.ring.field.convert(other)
        return self.scale(inv)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> Polynomial:
        c = self.ring.field.convert(c)
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, exp: tuple[int, ...], c) -> Polynomial:
        return Polynomial(self.ring, {_add_exp(e, exp): v * c for e, v in self.terms.items()})

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            if other.ring.variables != self.ring.variables:
                return False
            return self.terms == other.terms
        try:
            return self.terms == self.ring.constant(other).terms
        except (TypeError, ValueError):
            return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.ngens, self.ring.field.zero)

    def coeff(self, exp: tuple[int, ...]):
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def lowest_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str | int) -> int:
        i = self.ring.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def variables_used(self) -> tuple[str, ...]:
        used = [False] * self.ring.ngens
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.ring.variables, used) if u)

    def leading_term(self, order: MonomialOrder = DEGREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> tuple[int, ...]:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX):
        return self.leading_term(order)[1]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX, descending: bool = True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=descending)

    def monic(self, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(self.ring.field.one / self.leading_coefficient(order))

    def homogeneous_part(self, d: int) -> Polynomial:
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def initial_form(self) -> Polynomial:
        """Lowest-degree homogeneous part (the tangent cone equation)."""
        return self.homogeneous_part(self.lowest_degree())

    def truncate(self, k: int) -> Polynomial:
        """Drop every term of total degree above ``k``."""
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) <= k})

    # -- calculus and substitution -------------------------------------------

    def derivative(self, var: str | int) -> Polynomial:
        i = self.ring.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1 :]
                out[e2] = c * k
        return Polynomial(self.ring, out)

    def evaluate(self, point):
        """Evaluate at a full point (sequence ordered like the ring, or a name map)."""
        if isinstance(point, Mapping):
            point = [point[v] for v in self.ring.variables]
        if len(point) != self.ring.ngens:
            raise DimensionMismatch(f"point has {len(point)} coordinates, ring has {self.ring.ngens}")
        total = None
        powers: list[dict[int, object]] = [dict() for _ in point]
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    p = powers[i].get(k)
                    if p is None:
                        p = point[i] ** k
                        powers[i][k] = p
                    term = term * p
            total = term if total is None else total + term
        return self.ring.field.zero if total is None else total

    def evaluate_complex(self, point) -> complex:
        conv = self.ring.field.to_complex
        pt = [complex(x) for x in point]
        total = 0j
        for e, c in self.terms.items():
            term = conv(c)
            for x, k in zip(pt, e):
                if k:
                    term *= x**k
            total += term
        return total

    def substitute(self, mapping: Mapping[str, object], ring: PolyRing | None = None) -> Polynomial:
        """Replace variables by polynomials or scalars; the result lives in ``ring``.

        The target ring defaults to this ring.  Variables that are not
        substituted must exist in the target ring.
        """
        target = ring or self.ring
        images = []
        for v in self.ring.variables:
            if v in mapping:
                img = mapping[v]
                images.append(img if isinstance(img, Polynomial) else target.constant(img))
            else:
                images.append(target.gen(v))
        images = [target(img) if img.ring != target else img for img in images]
        cache: list[dict[int, Polynomial]] = [{1: img} for img in images]

        def power(i: int, k: int) -> Polynomial:
            p = cache[i].get(k)
            if p is None:
                half = power(i, k // 2)
                p = half * half
                if k % 2:
                    p = p * images[i]
                cache[i][k] = p
            return p

        out: dict = {}
        conv = target.field.convert
        for e, c in self.terms.items():
            term = target.constant(conv(c))
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term.terms.items():
                s = out.get(te)
                out[te] = tc if s is None else s + tc
        return Polynomial(target, {e: c for e, c in out.items() if c})

    def change_ring(self, ring: PolyRing) -> Polynomial:
        """Move into ``ring``, matching variables by name and embedding coefficients."""
        if ring == self.ring:
            return self
        conv = ring.field.convert
        if ring.variables == self.ring.variables:
            return ring.from_terms({e: conv(c) for e, c in self.terms.items()})
        pos = []
        for i, v in enumerate(self.ring.variables):
            if v in ring.variables:
                pos.append(ring.variables.index(v))
            else:
                pos.append(None)
        out = {}
        n = ring.ngens
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise UnknownVariable(
                            f"variable {self.ring.variables[i]!r} missing from target ring"
                        )
                    new[pos[i]] = k
            out[tuple(new)] = conv(c)
        return ring.from_terms(out)

    def coefficients_in(self, var: str | int) -> dict[int, Polynomial]:
        """Split as a polynomial in ``var``: degree -> coefficient (``var`` removed)."""
        i = self.ring.index(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1 :]] = c
        return {k: Polynomial(self.ring, t) for k, t in out.items()}

    def map_coefficients(self, fn, ring: PolyRing | None = None) -> Polynomial:
        target = ring or self.ring
        return target.from_terms({e: fn(c) for e, c in self.terms.items()})

    # -- printing -----------------------------------------------------------

    def to_string(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.ring.variables, e) if k
            )
            negative = False
            if field.is_atomic(c):
                text = field.format(c)
                if text.startswith("-"):
                    negative, text = True, text[1:]
                if mono:
                    text = mono if text == "1" else f"{text}*{mono}"
            else:
                text = f"({field.format(c)})"
                if mono:
                    text = f"{text}*{mono}"
            parts.append((negative, text))
        first_neg, first = parts[0]
        out = ("-" if first_neg else "") + first
        for neg, text in parts[1:]:
            out += (" - " if neg else " + ") + text
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r}, {self.ring!r})"


def partial_derivative(f: Polynomial, var: str) -> Polynomial:
    return f.derivative(var)


def translate(f: Polynomial, point) -> Polynomial:
    """Substitute x_i -> x_i + p_i, moving ``point`` to the origin."""
    if isinstance(point, Mapping):
        point = [point.get(v, 0) for v in f.ring.variables]
    point = list(point)
    if len(point) != f.ring.ngens:
        raise DimensionMismatch(f"point has {len(point)} coordinates, ring has {f.ring.ngens}")
    ring = f.ring
    for p in point:
        if not ring.field.contains(p):
            field = getattr(p, "field", None)
            if field is None:
                from .fields import QQ_OMEGA

                field = QQ_OMEGA
            ring = ring.with_field(common_field(ring.field, field))
            break
    g = f.change_ring(ring)
    mapping = {v: ring.gen(v) + ring.constant(p) for v, p in zip(ring.variables, point) if p}
    if not mapping:
        return g
    return g.substitute(mapping)


def rational(x) -> Fraction:
    return QQ.convert(x)
