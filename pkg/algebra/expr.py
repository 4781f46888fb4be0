"""Linear combinations of graph-factor monomials with coefficients in the ring."""

from __future__ import annotations

from typing import TYPE_CHECKING, Self

from algebra.ring import RingElem
from graphs.canonical import CanonicalShape, canonicalize

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

    from graphs.graph import Graph, Multigraph

Monomial = tuple[CanonicalShape, ...]


def monomial(*shapes: CanonicalShape) -> Monomial:
    """Sorted product of non-empty shapes; the empty shape is the unit ``gamma = 1``."""
    return tuple(sorted(shape for shape in shapes if not shape.is_empty))


class FactorExpr(object):
    """``sum(coefficient * prod(gamma_S for S in monomial)) + constant``.

    Monomials of length one are plain graph factors; longer monomials are the products that rewriting a disconnected
    factor produces. Zero coefficients are never stored.
    """

    __slots__ = ("constant", "terms")

    def __init__(
        self: Self,
        terms: Mapping[Monomial, RingElem] | None = None,
        constant: RingElem | None = None,
    ) -> None:
        self.terms: dict[Monomial, RingElem] = {}
        self.constant = constant if constant is not None else RingElem(0)
        for key, coefficient in (terms or {}).items():
            self._accumulate(key, coefficient)

    def _accumulate(self: Self, key: Monomial, coefficient: RingElem) -> None:
        if not key:
            self.constant = self.constant + coefficient
            return
        total = self.terms.get(key, RingElem(0)) + coefficient
        if total:
            self.terms[key] = total
        else:
            self.terms.pop(key, None)

    @classmethod
    def of(cls, shape: CanonicalShape | Graph | Multigraph, coefficient: RingElem | None = None) -> FactorExpr:
        """``coefficient * gamma_shape``."""
        key = shape if isinstance(shape, CanonicalShape) else canonicalize(shape)
        return cls({monomial(key): coefficient if coefficient is not None else RingElem(1)})

    @classmethod
    def scalar(cls, value: RingElem) -> FactorExpr:
        return cls(constant=value)

    @classmethod
    def total(cls, parts: Iterable[FactorExpr]) -> FactorExpr:
        result = cls()
        for part in parts:
            result = result + part
        return result

    def __add__(self: Self, other: FactorExpr) -> FactorExpr:
        result = FactorExpr(self.terms, self.constant)
        for key, coefficient in other.terms.items():
            result._accumulate(key, coefficient)
        result.constant = result.constant + other.constant
        return result

    def __neg__(self: Self) -> FactorExpr:
        return self.scale(RingElem(-1))

    def __sub__(self: Self, other: FactorExpr) -> FactorExpr:
        return self + (-other)

    def scale(self: Self, factor: RingElem) -> FactorExpr:
        if not factor:
            return FactorExpr()
        scaled = {key: coefficient * factor for key, coefficient in self.terms.items()}
        return FactorExpr(scaled, self.constant * factor)

    def __mul__(self: Self, other: FactorExpr | RingElem) -> FactorExpr:
        if isinstance(other, RingElem):
            return self.scale(other)
        result = FactorExpr(constant=self.constant * other.constant)
        for key, coefficient in self.terms.items():
            result._accumulate(key, coefficient * other.constant)
            for other_key, other_coefficient in other.terms.items():
                result._accumulate(monomial(*key, *other_key), coefficient * other_coefficient)
        for other_key, other_coefficient in other.terms.items():
            result._accumulate(other_key, other_coefficient * self.constant)
        return result

    def __eq__(self: Self, other: object) -> bool:
        if not isinstance(other, FactorExpr):
            return NotImplemented
        return self.terms == other.terms and self.constant == other.constant

    __hash__ = None  # type: ignore[assignment]

    def shapes(self: Self) -> set[CanonicalShape]:
        return {shape for key in self.terms for shape in key}

    def coefficient(self: Self, shape: CanonicalShape | Graph | Multigraph) -> RingElem:
        """Coefficient of the single-factor monomial ``gamma_shape``."""
        key = shape if isinstance(shape, CanonicalShape) else canonicalize(shape)
        return self.terms.get(monomial(key), RingElem(0))

    def sorted_terms(self: Self) -> list[tuple[Monomial, RingElem]]:
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0]))

    def is_reduced(self: Self) -> bool:
        """Every shape is a simple connected graph of minimum degree at least two."""
        return all(is_basis_shape(shape) for shape in self.shapes())

    def __repr__(self: Self) -> str:
        return f"FactorExpr({len(self.terms)} terms)"


def is_basis_shape(shape: CanonicalShape) -> bool:
    if not shape.is_simple:
        return False
    g = shape.graph()
    return g.is_connected() and g.min_degree >= 2  # noqa: PLR2004


def format_expr(e: FactorExpr) -> str:
    """Stable text form: ``a | b | shapes`` per term, shapes joined by ``" * "``, then ``a | b | const``."""
    lines = []
    for key, coefficient in e.sorted_terms():
        a, b = coefficient.text()
        lines.append(f"{a} | {b} | {' * '.join(str(shape) for shape in key)}")
    a, b = e.constant.text()
    lines.append(f"{a} | {b} | const")
    return "\n".join(lines) + "\n"
