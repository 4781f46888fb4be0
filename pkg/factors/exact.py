"""Exact arithmetic in the quadratic field Q(sqrt(r))."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Self

Rational = Fraction | int


def rational_sqrt(value: Fraction) -> Fraction | None:
    """The non-negative rational square root of ``value`` if it has one."""
    if value < 0:
        return None
    top, bottom = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if top * top == value.numerator and bottom * bottom == value.denominator:
        return Fraction(top, bottom)
    return None


@dataclass(frozen=True)
class QuadraticNumber(object):
    """``a + b*sqrt(r)`` with rational ``a``, ``b`` and a fixed positive rational radicand ``r``.

    When ``r`` is a rational square the radical part is folded into ``a`` so that equality stays structural.
    """

    a: Fraction
    b: Fraction
    r: Fraction

    def __post_init__(self: Self) -> None:
        a, b, r = Fraction(self.a), Fraction(self.b), Fraction(self.r)
        if r <= 0:
            msg = f"radicand must be positive, got {r}"
            raise ValueError(msg)
        root = rational_sqrt(r)
        if root is not None and b:
            a, b = a + b * root, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "r", r)

    @classmethod
    def rational(cls, value: Rational, r: Fraction) -> QuadraticNumber:
        return cls(Fraction(value), Fraction(0), r)

    @classmethod
    def root(cls, r: Fraction) -> QuadraticNumber:
        """``sqrt(r)`` itself."""
        return cls(Fraction(0), Fraction(1), r)

    def _coerce(self: Self, other: QuadraticNumber | Rational) -> QuadraticNumber:
        if isinstance(other, QuadraticNumber):
            if other.r != self.r:
                msg = f"Radicands differ: {self.r} and {other.r}"
                raise ValueError(msg)
            return other
        return QuadraticNumber.rational(other, self.r)

    def __add__(self: Self, other: QuadraticNumber | Rational) -> QuadraticNumber:
        o = self._coerce(other)
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.r)

    __radd__ = __add__

    def __neg__(self: Self) -> QuadraticNumber:
        return QuadraticNumber(-self.a, -self.b, self.r)

    def __sub__(self: Self, other: QuadraticNumber | Rational) -> QuadraticNumber:
        return self + (-self._coerce(other))

    def __rsub__(self: Self, other: Rational) -> QuadraticNumber:
        return self._coerce(other) - self

    def __mul__(self: Self, other: QuadraticNumber | Rational) -> QuadraticNumber:
        o = self._coerce(other)
        return QuadraticNumber(self.a * o.a + self.b * o.b * self.r, self.a * o.b + self.b * o.a, self.r)

    __rmul__ = __mul__

    def conjugate(self: Self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.r)

    def norm(self: Self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.r

    def inverse(self: Self) -> QuadraticNumber:
        norm = self.norm()
        if norm == 0:
            msg = "inverse of zero"
            raise ZeroDivisionError(msg)
        conjugate = self.conjugate()
        return QuadraticNumber(conjugate.a / norm, conjugate.b / norm, self.r)

    def __truediv__(self: Self, other: QuadraticNumber | Rational) -> QuadraticNumber:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self: Self, other: Rational) -> QuadraticNumber:
        return self._coerce(other) * self.inverse()

    def __pow__(self: Self, exponent: int) -> QuadraticNumber:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadraticNumber.rational(1, self.r)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self: Self, other: object) -> bool:
        if isinstance(other, QuadraticNumber):
            return (self.a, self.b, self.r) == (other.a, other.b, other.r)
        if isinstance(other, int | Fraction):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self: Self) -> int:
        return hash((self.a, self.b, self.r))

    def __bool__(self: Self) -> bool:
        return bool(self.a) or bool(self.b)

    def __float__(self: Self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.r)

    @property
    def is_rational(self: Self) -> bool:
        return self.b == 0

    def __str__(self: Self) -> str:
        if not self.b:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.r})"
