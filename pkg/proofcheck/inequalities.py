"""Pointwise evaluation of the analytic inequalities.

Every inequality is oriented as ``lower <= lhs <= rhs`` (``lower`` only where the statement is two-sided) so that
one slack, ``min(rhs - lhs, lhs - lower)``, decides every case.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Self

import numpy as np
from scipy import integrate

from proofcheck.exceptions import DomainViolationError

if TYPE_CHECKING:
    from collections.abc import Sequence

SLACK_TOLERANCE = 1e-12
QUADRATURE_TOLERANCE = 1e-10
GAUSSIAN_HALF_WIDTH = math.pi / 16
DEFAULT_M0 = 64.0


class LemmaId(Enum):
    """The checked inequalities."""

    CHARACTERISTIC_MODULUS = "modulus"
    PAIR_SQUARES = "pair-squares"
    PAIR_FOURTH_POWERS = "pair-fourth-powers"
    GAUSSIAN_BAND = "gaussian-band"
    GAUSSIAN_MOMENT = "gaussian-moment"
    SYMMETRIC_SUM = "symmetric-sum"

    @classmethod
    def _missing_(cls, value: object) -> LemmaId | None:
        return LEMMA_ALIASES.get(str(value).strip().lower())

    @classmethod
    def get_values(cls) -> list[str]:
        return [member.value for member in cls]

    def __str__(self: Self) -> str:
        return self.value


# Numbered names accepted on the command line.
LEMMA_ALIASES = {
    "2.1": LemmaId.CHARACTERISTIC_MODULUS,
    "2.2a": LemmaId.PAIR_SQUARES,
    "2.2b": LemmaId.PAIR_FOURTH_POWERS,
    "2.3": LemmaId.GAUSSIAN_BAND,
    "2.4": LemmaId.GAUSSIAN_MOMENT,
    "2.5": LemmaId.SYMMETRIC_SUM,
}


@dataclass(frozen=True)
class InequalityCase(object):
    """One evaluated point.

    Attributes
    ----------
        lemma (LemmaId): Which inequality.
        point (tuple[float, ...]): The inputs, in the order the checker takes them.
        lhs (float): The bounded quantity.
        rhs (float): Its upper bound.
        lower (float | None): Its lower bound for two-sided statements.
        identity_gap (float): For the modulus inequality, the gap between its two equal left-hand forms.
    """

    lemma: LemmaId
    point: tuple[float, ...]
    lhs: float
    rhs: float
    lower: float | None = None
    identity_gap: float = 0.0

    @property
    def slack(self: Self) -> float:
        upper = self.rhs - self.lhs
        return upper if self.lower is None else min(upper, self.lhs - self.lower)

    @property
    def tolerance(self: Self) -> float:
        """Absolute tolerance scaled to the magnitude of the compared values."""
        return SLACK_TOLERANCE * max(1.0, abs(self.lhs), abs(self.rhs))

    @property
    def holds(self: Self) -> bool:
        return self.slack >= -self.tolerance and self.identity_gap <= self.tolerance


def gaussian_integral(m: float, k: int = 0) -> float:
    """``int_{-pi/16}^{pi/16} |x|**k exp(-m x**2 + m x**4) dx`` by adaptive Gauss-Kronrod quadrature."""
    value, _ = integrate.quad(
        lambda x: abs(x) ** k * math.exp(-m * x * x + m * x**4),
        -GAUSSIAN_HALF_WIDTH,
        GAUSSIAN_HALF_WIDTH,
        points=[0.0],
        epsabs=QUADRATURE_TOLERANCE,
        epsrel=QUADRATURE_TOLERANCE,
        limit=200,
    )
    return value


def _modulus(lam: float, x: float) -> InequalityCase:
    if not 0 <= lam <= 1 or abs(x) > math.pi:
        msg = f"Modulus bound needs 0 <= lambda <= 1 and |x| <= pi, got lambda={lam} x={x}"
        raise DomainViolationError(msg)
    spread = lam * (1 - lam)
    modulus = abs(1 + lam * (cmath.exp(1j * x) - 1))
    closed_form = math.sqrt(max(0.0, 1 - 2 * spread * (1 - math.cos(x))))
    bound = math.exp(-spread * x * x / 2 + spread * x**4 / 24)
    return InequalityCase(LemmaId.CHARACTERISTIC_MODULUS, (lam, x), modulus, bound, None, abs(modulus - closed_form))


def _vector(values: Sequence[float], minimum: int) -> np.ndarray:
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1 or len(x) < minimum or not np.all(np.isfinite(x)):
        msg = f"Expected a finite real vector of length at least {minimum}, got {values!r}"
        raise DomainViolationError(msg)
    return x


def _pair_sums(x: np.ndarray) -> np.ndarray:
    rows, columns = np.triu_indices(len(x), k=1)
    return x[rows] + x[columns]


def _pair_squares(values: Sequence[float]) -> InequalityCase:
    x = _vector(values, 2)
    lhs = (len(x) - 2) * float(np.sum(x**2))
    rhs = float(np.sum(_pair_sums(x) ** 2))
    return InequalityCase(LemmaId.PAIR_SQUARES, tuple(x.tolist()), lhs, rhs)


def _pair_fourth_powers(values: Sequence[float]) -> InequalityCase:
    x = _vector(values, 2)
    lhs = float(np.sum(_pair_sums(x) ** 4))
    rhs = 8 * (len(x) - 1) * float(np.sum(x**4))
    return InequalityCase(LemmaId.PAIR_FOURTH_POWERS, tuple(x.tolist()), lhs, rhs)


def _gaussian_band(m: float, m0: float) -> InequalityCase:
    if m < m0:
        msg = f"Gaussian band is claimed only for m >= {m0}, got m={m}"
        raise DomainViolationError(msg)
    scale = math.sqrt(math.pi / m)
    value = gaussian_integral(m)
    return InequalityCase(LemmaId.GAUSSIAN_BAND, (m,), value, (1 + 2 / m) * scale, (1 - 2 / m) * scale)


def _gaussian_moment(m: float, k: int) -> InequalityCase:
    if m <= 0 or k < 0 or int(k) != k:
        msg = f"Gaussian moment bound needs m > 0 and an integer k >= 0, got m={m} k={k}"
        raise DomainViolationError(msg)
    k = int(k)
    bound = math.sqrt(2 * math.pi) * k ** (k / 2) * m ** (-(k + 1) / 2)
    return InequalityCase(LemmaId.GAUSSIAN_MOMENT, (m, k), gaussian_integral(m, k), bound)


def elementary_symmetric(values: np.ndarray, k: int) -> np.ndarray:
    """``e_k`` of the last axis, by the usual one-pass recurrence."""
    e = [np.ones(values.shape[:-1])] + [np.zeros(values.shape[:-1]) for _ in range(k)]
    for column in np.moveaxis(values, -1, 0):
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * column
    return e[k]


def _symmetric_sum(values: Sequence[float], k: int) -> InequalityCase:
    x = _vector(values, 1)
    if k < 1 or int(k) != k:
        msg = f"Symmetric-sum bound needs an integer k >= 1, got {k}"
        raise DomainViolationError(msg)
    k = int(k)
    squares = x**2
    total = float(np.sum(squares))
    distinct = math.factorial(k) * float(elementary_symmetric(squares, k))
    upper = distinct + math.comb(k, 2) * float(np.max(squares)) * total ** (k - 1)
    return InequalityCase(LemmaId.SYMMETRIC_SUM, (*x.tolist(), float(k)), total**k, upper, distinct)


def check_inequality(lemma: LemmaId | str, *inputs: float | Sequence[float], m0: float = DEFAULT_M0) -> InequalityCase:
    """Evaluate one inequality at one point.

    Inputs per inequality: ``(lambda, x)`` for the modulus bound, ``(x_vector,)`` for the two pair-sum bounds,
    ``(m,)`` for the Gaussian band, ``(m, k)`` for the Gaussian moment bound and ``(x_vector, k)`` for the
    symmetric-sum bound.

    Args:
        lemma (LemmaId | str): Inequality or its name.
        *inputs (float | Sequence[float]): The point.
        m0 (float): Smallest ``m`` for which the Gaussian band is claimed.

    Returns
    -------
        InequalityCase: Both sides and the slack.
    """
    lemma = LemmaId(lemma)
    try:
        match lemma:
            case LemmaId.CHARACTERISTIC_MODULUS:
                lam, x = inputs
                return _modulus(float(lam), float(x))
            case LemmaId.PAIR_SQUARES:
                (x,) = inputs
                return _pair_squares(x)
            case LemmaId.PAIR_FOURTH_POWERS:
                (x,) = inputs
                return _pair_fourth_powers(x)
            case LemmaId.GAUSSIAN_BAND:
                (m,) = inputs
                return _gaussian_band(float(m), m0)
            case LemmaId.GAUSSIAN_MOMENT:
                m, k = inputs
                return _gaussian_moment(float(m), k)
            case LemmaId.SYMMETRIC_SUM:
                x, k = inputs
                return _symmetric_sum(x, k)
    except (TypeError, ValueError) as e:
        msg = f"Bad inputs {inputs!r} for {lemma}: {e}"
        raise DomainViolationError(msg) from e
