"""Exact numbers a + b*sqrt(d) with rational a, b and squarefree d > 1."""
from __future__ import annotations

import numbers
from fractions import Fraction
from functools import total_ordering

from ..errors import InvalidInput, Unsupported


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidInput(f"cannot use {x!r} as an exact rational")


@total_ordering
class QuadraticNumber:
    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1):
        self.a = _frac(a)
        self.b = _frac(b)
        if self.b == 0:
            d = 1
        elif d < 2:
            raise InvalidInput("radicand must be >= 2 when b != 0")
        self.d = d

    @classmethod
    def sqrt(cls, d: int) -> "QuadraticNumber":
        return cls(0, 1, d)

    @classmethod
    def coerce(cls, x) -> "QuadraticNumber":
        return x if isinstance(x, QuadraticNumber) else cls(_frac(x))

    def _field(self, other: "QuadraticNumber") -> int:
        if self.d == 1:
            return other.d
        if other.d in (1, self.d):
            return self.d
        raise Unsupported(f"mixing sqrt({self.d}) and sqrt({other.d})")

    def __add__(self, other):
        o = QuadraticNumber.coerce(other)
        return QuadraticNumber(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-QuadraticNumber.coerce(other))

    def __rsub__(self, other):
        return QuadraticNumber.coerce(other) - self

    def __mul__(self, other):
        o = QuadraticNumber.coerce(other)
        d = self._field(o)
        return QuadraticNumber(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("zero has no inverse")
        return QuadraticNumber(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        return self * QuadraticNumber.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QuadraticNumber.coerce(other) * self.inverse()

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 d
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        return sa if lhs > rhs else (sb if rhs > lhs else 0)

    def __eq__(self, other):
        try:
            return (self - other).sign() == 0
        except (InvalidInput, Unsupported):
            return NotImplemented

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        b = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        if self.a == 0:
            return f"{b}sqrt({self.d})"
        sep = " + " if self.b > 0 else " - "
        b = "" if abs(self.b) == 1 else f"{abs(self.b)}*"
        return f"{self.a}{sep}{b}sqrt({self.d})"


SQRT2 = QuadraticNumber.sqrt(2)
SQRT3 = QuadraticNumber.sqrt(3)
PHI = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)


def bond_product(m: int) -> QuadraticNumber:
    """4 cos^2(pi/m) for the bond orders that occur in finite types."""
    table = {2: QuadraticNumber(0), 3: QuadraticNumber(1), 4: QuadraticNumber(2), 6: QuadraticNumber(3), 5: PHI * PHI}
    if m not in table:
        raise Unsupported(f"bond order {m} is not supported")
    return table[m]


def bond_root(m: int) -> QuadraticNumber:
    """sqrt(4 cos^2(pi/m)) = 2 cos(pi/m)."""
    table = {2: QuadraticNumber(0), 3: QuadraticNumber(1), 4: SQRT2, 6: SQRT3, 5: PHI}
    if m not in table:
        raise Unsupported(f"bond order {m} is not supported")
    return table[m]
