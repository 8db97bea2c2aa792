"""Exact arithmetic in Q(theta) for a chosen root theta of a rational polynomial.

The defining polynomial only needs to be square-free.  Elements are
residues modulo the current modulus; whenever a residue turns out to be a
zero divisor, the modulus is replaced by the factor that vanishes at theta
(dynamic evaluation), so the arithmetic is that of the field Q(theta).
Which factor holds theta is decided with a high-precision approximation
of the root.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Sequence

import mpmath

DPS = 60


def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _add(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _divmod(a, b):
    a = list(a)
    db = len(b) - 1
    inv = 1 / Fraction(b[-1])
    if len(a) <= db:
        return [], _trim(a)
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db])


def _monic(a):
    inv = 1 / Fraction(a[-1])
    return [c * inv for c in a]


def _gcdext(a, b):
    """(g, s) with g = gcd(a, b) monic and s*a = g mod b."""
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], []
    while r1:
        q, r = _divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _add(s0, [-c for c in _mul(q, s1)])
    lead = 1 / Fraction(r0[-1])
    return [c * lead for c in r0], [c * lead for c in s0]


def _refine(coeffs, approx):
    """Newton's method at DPS digits, from ``approx`` towards a root of ``coeffs``."""
    with mpmath.workdps(DPS + 10):
        c = [mpmath.mpf(q.numerator) / q.denominator for q in coeffs]
        dc = [k * c[k] for k in range(1, len(c))]
        z = mpmath.mpc(approx)
        tiny = mpmath.mpf(10) ** (-DPS - 5)
        for _ in range(200):
            fz = mpmath.polyval(c[::-1], z)
            dz = mpmath.polyval(dc[::-1], z)
            if dz == 0:
                break
            step = fz / dz
            z -= step
            if abs(step) <= tiny * max(1, abs(z)):
                break
    with mpmath.workdps(DPS):
        return +z


class AlgebraicRootField:
    """Q(theta) where theta is the root of ``poly`` closest to ``approx``."""

    exact = True

    def __init__(self, poly: Sequence, approx, symbol: str = "theta"):
        coeffs = _trim([Fraction(c) for c in poly])
        if len(coeffs) < 2:
            raise ValueError("defining polynomial must have positive degree")
        self.modulus = _monic(coeffs)
        self.approx = _refine(self.modulus, approx)
        self._approx_c = complex(self.approx)
        self.symbol = symbol
        self.name = f"Q({symbol})"
        self._lock = threading.Lock()
        self.zero = AlgebraicNumber(self, ())
        self.one = AlgebraicNumber(self, (Fraction(1),))
        self.gen = AlgebraicNumber(self, (Fraction(0), Fraction(1)))

    @property
    def degree_bound(self) -> int:
        return len(self.modulus) - 1

    # residues modulo the current modulus

    def reduce(self, coeffs) -> tuple:
        c = _trim(list(coeffs))
        if len(c) >= len(self.modulus):
            c = _divmod(c, self.modulus)[1]
        return tuple(c)

    def _value(self, coeffs):
        with mpmath.workdps(DPS):
            acc = mpmath.mpc(0)
            for c in reversed(coeffs):
                acc = acc * self.approx + mpmath.mpf(c.numerator) / c.denominator
            scale = sum(abs(mpmath.mpf(c.numerator) / c.denominator) for c in coeffs) * max(1, abs(self.approx)) ** len(coeffs)
            return acc, scale

    def _relative(self, factor):
        val, scale = self._value(factor)
        return abs(val) / scale

    def _split(self, g):
        """Shrink the modulus to the factor of g or modulus/g that vanishes at theta."""
        other = _divmod(self.modulus, g)[0]
        self.modulus = _monic(g) if self._relative(g) <= self._relative(other) else _monic(other)

    def _clearly_nonzero(self, c) -> bool:
        # double precision screen before the mp evaluation
        z = self._approx_c
        acc = 0j
        for q in reversed(c):
            acc = acc * z + float(q)
        scale = sum(abs(float(q)) for q in c) * max(1.0, abs(z)) ** len(c)
        return abs(acc) > 1e-8 * scale

    def is_zero(self, coeffs) -> bool:
        c = self.reduce(coeffs)
        if not c:
            return True
        if len(c) == 1 or self._clearly_nonzero(c):
            return False
        val, scale = self._value(c)
        if abs(val) > mpmath.mpf(10) ** (-DPS // 2) * scale:
            return False
        with self._lock:
            g, _ = _gcdext(list(c), self.modulus)
            if len(g) == 1:
                return False
            self._split(g)
            return not self.reduce(c)

    def inverse(self, coeffs) -> tuple:
        if self.is_zero(coeffs):
            raise ZeroDivisionError("division by zero in a number field")
        with self._lock:
            c = list(self.reduce(coeffs))
            g, s = _gcdext(c, self.modulus)
            if len(g) > 1:
                self._split(g)
                c = list(self.reduce(coeffs))
                g, s = _gcdext(c, self.modulus)
            return self.reduce(s)

    # field protocol used by PolyRing

    def convert(self, x) -> AlgebraicNumber:
        if isinstance(x, AlgebraicNumber):
            if x.field is not self:
                raise ValueError("element of a different number field")
            return x
        if hasattr(x, "b"):
            if x.b:
                raise ValueError("omega is not in this field")
            x = x.a
        return AlgebraicNumber(self, (Fraction(x),))

    def contains(self, x) -> bool:
        if isinstance(x, AlgebraicNumber):
            return x.field is self
        if hasattr(x, "b"):
            return x.b == 0
        return isinstance(x, (int, Fraction))

    def to_complex(self, x) -> complex:
        return complex(self.convert(x))

    def format(self, x) -> str:
        return str(self.convert(x))

    def is_atomic(self, x) -> bool:
        return len([c for c in self.convert(x).coeffs if c]) <= 1

    def minimal_polynomial(self) -> tuple:
        return tuple(self.modulus)

    def __repr__(self):
        return f"{self.name} ~ {complex(self.approx):.6g}"


class AlgebraicNumber:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: AlgebraicRootField, coeffs):
        self.field = field
        self.coeffs = field.reduce([Fraction(c) for c in coeffs])

    def _lift(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field is not self.field:
                raise ValueError("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.field, (Fraction(other),))
        if hasattr(other, "b") and other.b == 0:
            return AlgebraicNumber(self.field, (other.a,))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return AlgebraicNumber(self.field, _add(list(self.coeffs), list(o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, [-c for c in self.coeffs])

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
        return AlgebraicNumber(self.field, _mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> AlgebraicNumber:
        return AlgebraicNumber(self.field, self.field.inverse(self.coeffs))

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
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return not self.field.is_zero(self.coeffs)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return not bool(self - o)

    def __hash__(self):
        # equal elements can have different residues before a split
        return hash(id(self.field))

    def __complex__(self):
        val, _ = self.field._value(list(self.field.reduce(self.coeffs)))
        return complex(val)

    def __repr__(self):
        return f"AlgebraicNumber({self})"

    def __str__(self):
        c = self.field.reduce(self.coeffs)
        if not c:
            return "0"
        parts = []
        sym = self.field.symbol
        for k in range(len(c) - 1, -1, -1):
            q = c[k]
            if not q:
                continue
            mono = "" if k == 0 else (sym if k == 1 else f"{sym}^{k}")
            coef = str(q)
            if mono:
                coef = "" if q == 1 else ("-" if q == -1 else f"{coef}*")
            parts.append(f"{coef}{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")
