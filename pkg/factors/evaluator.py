"""Cached graph-factor values of one graph."""

from __future__ import annotations

from typing import TYPE_CHECKING, Self

from factors.exact import QuadraticNumber
from factors.homomorphism import labelled_sum_float, labelled_sum_int
from graphs.canonical import CanonicalShape, aut_count, canonicalize
from graphs.graph import Graph, Multigraph

if TYPE_CHECKING:
    from factors.field import EdgeField

FactorNumber = float | QuadraticNumber


def as_shape(shape: CanonicalShape | Graph | Multigraph) -> CanonicalShape:
    return shape if isinstance(shape, CanonicalShape) else canonicalize(shape)


class FactorEvaluator(object):
    """Evaluates ``gamma_S = L(S)/aut(S)`` for canonical shapes on one graph, memoising per shape.

    In exact mode values are ``QuadraticNumber`` elements of ``Q(q)``; otherwise floats.
    """

    def __init__(self: Self, field: EdgeField, *, exact: bool = False) -> None:
        self.field = field
        self.exact = exact
        self._cache: dict[CanonicalShape, FactorNumber] = {}

    def labelled_sum(self: Self, pattern: Multigraph) -> FactorNumber:
        """``L(pattern)``: chi products over injective placements of every vertex of ``pattern``."""
        if self.exact:
            total = sum(count for _, count in pattern.multiplicities)
            return labelled_sum_int(pattern, self.field.integer_chi) * self.field.exact_scale(total)
        return labelled_sum_float(pattern, self.field.chi)

    def gamma_raw(self: Self, shape: CanonicalShape | Graph | Multigraph) -> FactorNumber:
        """Sum over copies of ``shape`` in ``K_n`` of the product of ``chi ** multiplicity``."""
        key = as_shape(shape)
        if key not in self._cache:
            if key.is_empty:
                value = self.one()
            else:
                value = self.labelled_sum(key.multigraph()) / aut_count(key)
            self._cache[key] = value
        return self._cache[key]

    def one(self: Self) -> FactorNumber:
        if self.exact:
            return self.field.exact_scale(0)
        return 1.0
