"""Leading-order mean and variance of subgraph counts in the dense regular model."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Self

from graphs.canonical import aut_count
from graphs.counting import count_subgraphs
from graphs.shapes import cycle, path
from stats.exceptions import StarShapeError

if TYPE_CHECKING:
    from graphs.graph import Graph


class VarianceRegime(Enum):
    """Which smallest non-deterministic factor dominates ``Var[X_H]``."""

    HAS_C3 = "has-C3"
    HAS_C4_NO_C3 = "has-C4-no-C3"
    NO_C3_NO_C4 = "no-C3-no-C4"

    def __str__(self: Self) -> str:
        return self.value


@dataclass(frozen=True)
class VariancePrediction(object):
    """Leading term of ``Var[X_H]`` with the shape statistics it was computed from.

    The error is ``O(n**(2v - k - 1/6))`` with ``k`` the regime's cycle length; its constant is unknown, so only
    ``relative_error_order`` (the exponent ``-1/6``) is reported.
    """

    shape: Graph
    n: int
    d: int
    regime: VarianceRegime
    value: float
    copies_c3: int
    copies_c4: int
    copies_c5: int
    copies_p4: int
    aut: int
    edges: int
    vertices: int
    relative_error_order: float = -1 / 6


def _density(n: int, d: int) -> float:
    return d / (n - 1)


def predicted_mean(h: Graph, n: int, d: int) -> float:
    """``n**v p**e / aut(H)``, the leading term of ``E[X_H]``."""
    return n**h.vertex_count * _density(n, d) ** h.edge_count / aut_count(h)


def predicted_variance(h: Graph, n: int, d: int) -> VariancePrediction:
    """Leading term of ``Var[X_H]`` for a connected non-star shape.

    Args:
        h (Graph): Connected shape on at least three vertices, not a star.
        n (int): Vertex count of the ensemble.
        d (int): Degree.

    Returns
    -------
        VariancePrediction: Regime and leading value.
    """
    if not h.edges or not h.is_connected():
        msg = f"Variance predictions need a connected non-empty shape, got {h}"
        raise ValueError(msg)
    if h.is_star():
        msg = f"{h} is a star: its count is always n*C(d, s)"
        raise StarShapeError(msg)
    p = _density(n, d)
    v, e, aut = h.vertex_count, h.edge_count, aut_count(h)
    c3, c4 = count_subgraphs(h, cycle(3)), count_subgraphs(h, cycle(4))
    c5, p4 = count_subgraphs(h, cycle(5)), count_subgraphs(h, path(4))
    if c3:
        regime = VarianceRegime.HAS_C3
        value = 6 * c3**2 * p ** (2 * e - 3) * (1 - p) ** 3 * n ** (2 * v - 3) / aut**2
    elif c4:
        regime = VarianceRegime.HAS_C4_NO_C3
        value = 8 * c4**2 * p ** (2 * e - 4) * (1 - p) ** 4 * n ** (2 * v - 4) / aut**2
    else:
        regime = VarianceRegime.NO_C3_NO_C4
        leading = 10 * p ** (2 * e - 5) * (1 - p) ** 5 * c5**2 + 6 * p ** (2 * e - 3) * (1 - p) ** 3 * p4**2
        value = leading * n ** (2 * v - 5) / aut**2
    return VariancePrediction(h, n, d, regime, value, c3, c4, c5, p4, aut, e, v)
