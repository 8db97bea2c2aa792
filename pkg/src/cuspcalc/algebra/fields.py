"""Exact coefficient fields: the rationals and the cyclotomic field Q(omega).

Rationals are plain :class:`fractions.Fraction` values.  Elements of
Q(omega), with omega^2 + omega + 1 = 0, are :class:`QOmega` pairs
``a + b*omega``.  The rational function field lives in
:mod:`cuspcalc.algebra.ratfunc` because it needs polynomials.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

OMEGA_COMPLEX = complex(-0.5, 3**0.5 / 2)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL_RE.match(x)
        if not m:
            raise ValueError(f"not a rational literal: {x!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        return Fraction(num, den)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class QOmega:
    """The element ``a + b*omega`` of Q(omega)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = to_fraction(a)
        self.b = to_fraction(b)

    @staticmethod
    def _lift(other):
        if isinstance(other, QOmega):
            return other
        if isinstance(other, (int, Fraction)):
            return QOmega(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QOmega(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QOmega(-self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QOmega(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.a, self.b, o.a, o.b
        bd = b * d
        return QOmega(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        a, b = self.a, self.b
        return a * a - a * b + b * b

    def conjugate(self) -> QOmega:
        return QOmega(self.a - self.b, -self.b)

    def inverse(self) -> QOmega:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(omega)")
        c = self.conjugate()
        return QOmega(c.a / n, c.b / n)

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
        result, base = QOmega(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __complex__(self):
        return complex(self.a) + complex(self.b) * OMEGA_COMPLEX

    def __repr__(self):
        return f"QOmega({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return format_fraction(self.a)
        if self.b == 1:
            bpart = "omega"
        elif self.b == -1:
            bpart = "-omega"
        else:
            bpart = f"{format_fraction(self.b)}*omega"
        if self.a == 0:
            return bpart
        if bpart.startswith("-"):
            return f"{format_fraction(self.a)} - {bpart[1:]}"
        return f"{format_fraction(self.a)} + {bpart}"


OMEGA = QOmega(0, 1)
# i*sqrt(3) = omega - omega^2 = 2*omega + 1
I_SQRT3 = QOmega(1, 2)


class RationalField:
    name = "QQ"
    exact = True

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def convert(self, x) -> Fraction:
        if isinstance(x, QOmega):
            if x.b:
                raise ValueError("element of Q(omega) is not rational")
            return x.a
        return to_fraction(x)

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) or (isinstance(x, QOmega) and x.b == 0)

    def to_complex(self, x) -> complex:
        return complex(x)

    def format(self, x) -> str:
        return format_fraction(x)

    def is_atomic(self, x) -> bool:
        return True

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class CyclotomicField:
    """Q(omega) with omega a primitive cube root of unity."""

    name = "QQ(omega)"
    exact = True

    def __init__(self):
        self.zero = QOmega(0)
        self.one = QOmega(1)
        self.gen = OMEGA

    def convert(self, x) -> QOmega:
        if isinstance(x, QOmega):
            return x
        return QOmega(to_fraction(x))

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction, QOmega))

    def to_complex(self, x) -> complex:
        return complex(x)

    def format(self, x) -> str:
        return str(x)

    def is_atomic(self, x) -> bool:
        return x.a == 0 or x.b == 0

    def __eq__(self, other):
        return isinstance(other, CyclotomicField)

    def __hash__(self):
        return hash("QQ(omega)")

    def __repr__(self):
        return "QQ(omega)"


QQ = RationalField()
QQ_OMEGA = CyclotomicField()


def common_field(f, g):
    """Smallest field of the tower containing both ``f`` and ``g``."""
    if f == g:
        return f
    if f == QQ:
        return g
    if g == QQ:
        return f
    raise TypeError(f"no common field for {f!r} and {g!r}")
