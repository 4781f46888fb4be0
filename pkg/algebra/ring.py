"""The coefficient ring Q(n, p)[q] with q**2 = p(1-p)."""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Self

from sympy.polys.domains import QQ
from sympy.polys.fields import field

from algebra.exceptions import PoleAtEvaluationError
from factors.exact import QuadraticNumber

if TYPE_CHECKING:
    from sympy.polys.fields import FracElement
    from sympy.polys.rings import PolyElement

K, N, P = field("n,p", QQ)
R = P * (1 - P)


def rational(value: Fraction | int) -> FracElement:
    """Embed a rational constant in ``Q(n, p)``."""
    value = Fraction(value)
    return K(QQ(value.numerator, value.denominator))


def _evaluate_poly(poly: PolyElement, n: int, p: Fraction) -> Fraction:
    value = poly(QQ(n), QQ(p.numerator, p.denominator))
    return Fraction(int(value.numerator), int(value.denominator))


def evaluate_fraction(element: FracElement, n: int, p: Fraction) -> Fraction:
    """Value of a rational function at ``(n, p)``; a vanishing denominator is a pole."""
    denominator = _evaluate_poly(element.denom, n, p)
    if denominator == 0:
        msg = f"Coefficient {element.as_expr()} has a pole at n={n}, p={p}"
        raise PoleAtEvaluationError(msg)
    return _evaluate_poly(element.numer, n, p) / denominator


def falling(top: FracElement, k: int) -> FracElement:
    """``top (top-1) ... (top-k+1)``."""
    result = K.one
    for i in range(k):
        result *= top - i
    return result


class RingElem(object):
    """``a + b*q`` with ``a, b`` rational functions of ``(n, p)`` and ``q**2 = p(1-p)``."""

    __slots__ = ("a", "b")

    def __init__(self: Self, a: FracElement | Fraction | int = 0, b: FracElement | Fraction | int = 0) -> None:
        self.a = a if hasattr(a, "numer") else rational(a)
        self.b = b if hasattr(b, "numer") else rational(b)

    @classmethod
    def q(cls) -> RingElem:
        return cls(0, 1)

    @classmethod
    def c(cls) -> RingElem:
        """``(2p-1)/q``, the linear coefficient of ``chi**2 = 1 - c*chi``."""
        return cls(0, (2 * P - 1) / R)

    def _coerce(self: Self, other: RingElem | Fraction | int) -> RingElem:
        return other if isinstance(other, RingElem) else RingElem(other)

    def __add__(self: Self, other: RingElem | Fraction | int) -> RingElem:
        o = self._coerce(other)
        return RingElem(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self: Self) -> RingElem:
        return RingElem(-self.a, -self.b)

    def __sub__(self: Self, other: RingElem | Fraction | int) -> RingElem:
        return self + (-self._coerce(other))

    def __rsub__(self: Self, other: Fraction | int) -> RingElem:
        return self._coerce(other) - self

    def __mul__(self: Self, other: RingElem | Fraction | int) -> RingElem:
        o = self._coerce(other)
        return RingElem(self.a * o.a + self.b * o.b * R, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self: Self) -> RingElem:
        norm = self.a * self.a - self.b * self.b * R
        if not norm:
            msg = "RingElem has no inverse"
            raise ZeroDivisionError(msg)
        return RingElem(self.a / norm, -self.b / norm)

    def __truediv__(self: Self, other: RingElem | Fraction | int) -> RingElem:
        return self * self._coerce(other).inverse()

    def __pow__(self: Self, exponent: int) -> RingElem:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = RingElem(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self: Self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            other = RingElem(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self: Self) -> int:
        return hash((self.a, self.b))

    def __bool__(self: Self) -> bool:
        return bool(self.a) or bool(self.b)

    def evaluate(self: Self, n: int, d: int) -> QuadraticNumber:
        """Exact value at ``p = d/(n-1)`` and ``q = +sqrt(p(1-p))``."""
        p = Fraction(d, n - 1)
        return self.evaluate_at(n, p)

    def evaluate_at(self: Self, n: int, p: Fraction) -> QuadraticNumber:
        r = p * (1 - p)
        a = evaluate_fraction(self.a, n, p)
        b = evaluate_fraction(self.b, n, p)
        return QuadraticNumber(a, b, r)

    def text(self: Self) -> tuple[str, str]:
        """``(a, b)`` as sympy expression strings."""
        return str(self.a.as_expr()), str(self.b.as_expr())

    def __repr__(self: Self) -> str:
        a, b = self.text()
        return f"RingElem({a} | {b})"
