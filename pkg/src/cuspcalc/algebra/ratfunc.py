"""Rational functions over Q in named parameters."""

from __future__ import annotations

from fractions import Fraction

from .gcd import exact_divide, gcd
from .orders import LEX
from .polynomial import PolyRing, Polynomial


class RationalFunction:
    """A reduced fraction num/den with den monic in the lex order."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: FractionField, num: Polynomial, den: Polynomial | None = None, reduce=True):
        self.field = field
        if den is None:
            den = field.ring.one
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            if num.is_zero():
                den = field.ring.one
            else:
                g = gcd(num, den)
                if not g.is_constant():
                    num = exact_divide(num, g)
                    den = exact_divide(den, g)
            lc = den.leading_coefficient(LEX)
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        self.num = num
        self.den = den

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.field, self.field.ring.constant(other), reduce=False)
        if isinstance(other, Polynomial) and other.ring == self.field.ring:
            return RationalFunction(self.field, other, reduce=False)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.field, self.num + o.num, self.den)
        return RationalFunction(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den.is_constant() and o.den.is_constant():
            return RationalFunction(self.field, self.num * o.num, reduce=False)
        return RationalFunction(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.field, self.num**n, self.den**n, reduce=False)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.is_constant() and self.num.is_constant():
            return hash(self.num.constant_coeff())
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def specialize(self, values: dict):
        """Evaluate at numeric parameter values (rationals or Q(omega) elements)."""
        pt = [values[p] for p in self.field.params]
        d = self.den.evaluate(pt)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the specialization")
        return self.num.evaluate(pt) / d

    def __str__(self):
        if self.den.is_constant():
            return self.num.to_string(LEX)
        num = self.num.to_string(LEX)
        if len(self.num.terms) > 1:
            num = f"({num})"
        den = self.den.to_string(LEX)
        if len(self.den.terms) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RationalFunction({self})"


class FractionField:
    """The field Q(p_1, ..., p_k) of rational functions in the named parameters."""

    exact = True

    def __init__(self, params):
        self.params = tuple(params)
        self.ring = PolyRing(self.params)
        self.zero = RationalFunction(self, self.ring.zero, reduce=False)
        self.one = RationalFunction(self, self.ring.one, reduce=False)
        self.name = f"QQ({', '.join(self.params)})"

    def gen(self, name: str) -> RationalFunction:
        return RationalFunction(self, self.ring.gen(name), reduce=False)

    def gens(self):
        return tuple(self.gen(p) for p in self.params)

    def convert(self, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            if x.field is self or x.field == self:
                return x
            return RationalFunction(self, x.num.change_ring(self.ring), x.den.change_ring(self.ring))
        if isinstance(x, Polynomial):
            return RationalFunction(self, x.change_ring(self.ring), reduce=False)
        return RationalFunction(self, self.ring.constant(x), reduce=False)

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction, RationalFunction))

    def to_complex(self, x) -> complex:
        if x.num.is_constant() and x.den.is_constant():
            return complex(x.num.constant_coeff() / x.den.constant_coeff())
        raise TypeError("rational function with free parameters has no numeric value")

    def format(self, x) -> str:
        return str(x)

    def is_atomic(self, x) -> bool:
        return x.den.is_constant() and len(x.num.terms) <= 1 and (
            x.num.is_constant() or x.num.leading_coefficient() in (1, -1)
        )

    def __eq__(self, other):
        return isinstance(other, FractionField) and other.params == self.params

    def __hash__(self):
        return hash(("frac", self.params))

    def __repr__(self):
        return self.name


def split_parameters(f: Polynomial, keep: tuple[str, ...]) -> Polynomial:
    """View ``f`` as a polynomial in ``keep`` with the remaining variables as parameters."""
    params = tuple(v for v in f.ring.variables if v not in keep)
    field = FractionField(params)
    ring = PolyRing(tuple(keep), field)
    keep_idx = [f.ring.index(v) for v in keep]
    par_idx = [f.ring.index(v) for v in params]
    buckets: dict[tuple, dict] = {}
    for e, c in f.terms.items():
        ke = tuple(e[i] for i in keep_idx)
        pe = tuple(e[i] for i in par_idx)
        buckets.setdefault(ke, {})[pe] = c
    return ring.from_terms(
        {ke: RationalFunction(field, Polynomial(field.ring, t), reduce=False) for ke, t in buckets.items()}
    )
