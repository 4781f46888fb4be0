"""Graph factors and their normalisation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from loguru import logger

from factors.evaluator import FactorEvaluator, FactorNumber
from factors.exceptions import ShapeTooLargeForEnsembleError, ShapeUnsupportedError
from factors.field import EdgeField
from factors.walks import MAX_WALK_LENGTH, MIN_WALK_LENGTH, cycle_gamma_via_trace
from graphs.canonical import aut_count

if TYPE_CHECKING:
    from graphs.graph import Graph

MAX_FACTOR_VERTICES = 8


@dataclass(frozen=True)
class FactorValue(object):
    """One graph factor of one graph.

    Attributes
    ----------
        raw (float): ``gamma_H(G)``.
        expectation_shift (float | None): ``E_H``, ``None`` where the normalisation is undefined.
        scale (float | None): ``sigma_H``.
        normalized (float | None): ``(raw - E_H) / sigma_H``.
    """

    raw: float
    expectation_shift: float | None = None
    scale: float | None = None
    normalized: float | None = None


def normalization_constants(h: Graph, n: int) -> tuple[float, float]:
    """``(E_H, sigma_H)`` for a connected shape of minimum degree at least two.

    ``E_H = 2 n**(v/2) / aut(H)`` for even cycles and zero otherwise; ``sigma_H = (n**v / aut(H)) ** 0.5``.

    Args:
        h (Graph): The shape.
        n (int): Ensemble size.

    Returns
    -------
        tuple[float, float]: The expectation shift and the scale.
    """
    if not h.edges or not h.is_connected() or h.min_degree < 2:  # noqa: PLR2004
        msg = f"Normalisation is defined only for connected shapes of minimum degree 2, got {h}"
        raise ShapeUnsupportedError(msg)
    v = h.vertex_count
    if v > n:
        msg = f"Shape on {v} vertices has no copies in K_{n}"
        raise ShapeTooLargeForEnsembleError(msg)
    aut = aut_count(h)
    shift = 2 * n ** (v / 2) / aut if h.is_cycle() and v % 2 == 0 else 0.0
    return shift, math.sqrt(n**v / aut)


def _is_trace_cycle(h: Graph) -> bool:
    return h.is_cycle() and MIN_WALK_LENGTH <= h.edge_count <= MAX_WALK_LENGTH


def gamma(
    g: Graph,
    h: Graph,
    d: int | None = None,
    *,
    evaluator: FactorEvaluator | None = None,
    use_trace: bool = True,
) -> FactorValue:
    """``gamma_H(G)`` with its normalisation where defined.

    Cycles of length 3 to 6 go through the trace of chi corrected by the degenerate closed-walk shapes; every
    other shape, and every shape in exact mode, goes through the labelled-sum contraction.

    Args:
        g (Graph): Graph in ``G(n, d)``.
        h (Graph): Shape, at most ``MAX_FACTOR_VERTICES`` non-isolated vertices.
        d (int | None): Degree; taken from ``g``'s density when omitted.
        evaluator (FactorEvaluator | None): Reused across shapes of the same graph when given.
        use_trace (bool): Whether cycles may use the trace path.

    Returns
    -------
        FactorValue: Raw value plus ``E_H``, ``sigma_H`` and the normalised value, ``None`` where undefined.
    """
    if h.vertex_count > MAX_FACTOR_VERTICES:
        msg = f"Graph factors are evaluated for shapes of at most {MAX_FACTOR_VERTICES} vertices, got {h.vertex_count}"
        raise ShapeUnsupportedError(msg)
    if evaluator is None:
        evaluator = FactorEvaluator(EdgeField(g, d))
    raw: FactorNumber
    if use_trace and not evaluator.exact and _is_trace_cycle(h):
        raw = cycle_gamma_via_trace(evaluator, h.edge_count)
    else:
        raw = evaluator.gamma_raw(h)
    value = float(raw)
    try:
        shift, scale = normalization_constants(h, g.n)
    except (ShapeUnsupportedError, ShapeTooLargeForEnsembleError) as e:
        logger.debug(f"No normalisation for {h}: {e}")
        return FactorValue(raw=value)
    return FactorValue(raw=value, expectation_shift=shift, scale=scale, normalized=(value - shift) / scale)
