"""Edge variables chi_e = (x_e - p)/q of a graph at density p."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING, Self

import numpy as np

from factors.exact import QuadraticNumber
from factors.exceptions import DegenerateDensityError

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from graphs.graph import Graph


class EdgeField(object):
    """The chi values of every pair of ``graph``.

    With ``d`` given the density is ``p = d/(n-1)``; otherwise it is the edge density ``e/C(n,2)``, which is the same
    value on every d-regular graph. ``p`` may also be passed directly for identities that hold on any graph.

    Attributes
    ----------
        graph (Graph): The graph whose edge indicators are standardised.
        n (int): Vertex count.
        p (Fraction): Density.
        r (Fraction): ``p(1-p) = q**2``.
        q (float): ``sqrt(p(1-p))``.
    """

    def __init__(self: Self, graph: Graph, d: int | None = None, p: Fraction | None = None) -> None:
        self.graph = graph
        self.n = graph.n
        if p is None:
            if self.n < 2:  # noqa: PLR2004
                msg = f"Density is undefined on {self.n} vertices"
                raise DegenerateDensityError(msg)
            p = Fraction(d, self.n - 1) if d is not None else Fraction(2 * graph.edge_count, self.n * (self.n - 1))
        self.p = Fraction(p)
        if not 0 < self.p < 1:
            msg = f"Density p = {self.p} must lie strictly between 0 and 1"
            raise DegenerateDensityError(msg)
        self.d = d
        self.r = self.p * (1 - self.p)
        self.q = math.sqrt(self.r)

    @cached_property
    def chi(self: Self) -> NDArray[np.float64]:
        """Symmetric chi matrix with a zero diagonal."""
        adjacency = self.graph.adjacency_matrix()
        matrix = (adjacency - float(self.p)) / self.q
        np.fill_diagonal(matrix, 0.0)
        return matrix

    @property
    def scale_denominator(self: Self) -> int:
        """``b`` in ``p = a/b``; ``chi = Y / (b*q)`` for the integer matrix ``Y``."""
        return self.p.denominator

    @cached_property
    def integer_chi(self: Self) -> NDArray[np.int64]:
        """``Y = b*A - a*(J - I)``, zero on the diagonal."""
        adjacency = self.graph.adjacency_matrix(dtype=np.int64)
        matrix = self.p.denominator * adjacency - self.p.numerator
        np.fill_diagonal(matrix, 0)
        return matrix

    def chi_value(self: Self, u: int, v: int) -> float:
        return float(self.chi[u, v])

    def exact_scale(self: Self, total_multiplicity: int) -> QuadraticNumber:
        """``(b*q)**(-E)``: the factor turning a product of ``E`` entries of ``Y`` into a product of chi values."""
        root = QuadraticNumber.root(self.r)
        denominator = self.p.denominator**total_multiplicity
        return QuadraticNumber.rational(Fraction(1, denominator), self.r) / root**total_multiplicity

    def exact_chi(self: Self, u: int, v: int) -> QuadraticNumber:
        if u == v:
            return QuadraticNumber.rational(0, self.r)
        return int(self.integer_chi[u, v]) * self.exact_scale(1)
