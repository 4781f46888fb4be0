"""Numeric value of a factor expression on a concrete graph."""

from __future__ import annotations

from typing import TYPE_CHECKING

from factors.evaluator import FactorEvaluator, FactorNumber
from factors.field import EdgeField

if TYPE_CHECKING:
    from fractions import Fraction

    from algebra.expr import FactorExpr
    from algebra.ring import RingElem
    from graphs.graph import Graph


def evaluate(
    e: FactorExpr,
    g: Graph,
    n: int | None = None,
    d: int | None = None,
    *,
    p: Fraction | None = None,
    exact: bool = False,
    evaluator: FactorEvaluator | None = None,
) -> FactorNumber:
    """``sum(coefficient(n, p, q) * prod(gamma_S(g))) + constant(n, p, q)``.

    Coefficients are evaluated at the density of the chi field: ``d/(n-1)`` when ``d`` is given, ``p`` when given,
    the edge density of ``g`` otherwise. The last two make expansions that hold on every graph checkable on
    non-regular inputs.

    Args:
        e (FactorExpr): Expression to evaluate.
        g (Graph): Host graph.
        n (int | None): Must match ``g.n`` when given.
        d (int | None): Degree fixing ``p = d/(n-1)``.
        p (Fraction | None): Explicit density.
        exact (bool): Return an element of ``Q(q)`` instead of a float.
        evaluator (FactorEvaluator | None): Shared factor cache for ``g``.

    Returns
    -------
        FactorNumber: ``float`` or ``QuadraticNumber``.
    """
    if n is not None and n != g.n:
        msg = f"Expression evaluated with n={n} on a graph with {g.n} vertices"
        raise ValueError(msg)
    if evaluator is None:
        evaluator = FactorEvaluator(EdgeField(g, d, p), exact=exact)
    field = evaluator.field

    def coefficient_value(value: RingElem) -> FactorNumber:
        number = value.evaluate_at(field.n, field.p)
        return number if evaluator.exact else float(number)

    total = coefficient_value(e.constant)
    for key, coefficient in e.terms.items():
        term = coefficient_value(coefficient)
        for shape in key:
            term = term * evaluator.gamma_raw(shape)
        total = total + term
    return total
