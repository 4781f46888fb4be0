"""Parameters of a d-regular ensemble and of one sampling chain over it."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Self

from ensemble.exceptions import InfeasibleError

BURN_IN_FACTOR = 20
THINNING_FACTOR = 2


def _swap_heuristic(factor: int, m: int) -> int:
    """``ceil(factor * m * ln m)``, zero for chains with fewer than two edges."""
    if m < 2:  # noqa: PLR2004
        return 0
    return math.ceil(factor * m * math.log(m))


@dataclass(frozen=True)
class EnsembleSpec(object):
    """The ensemble ``G(n, d)`` together with the knobs of the swap chain that samples it.

    Attributes
    ----------
        n (int): Vertex count.
        d (int): Common degree.
        seed (int): 64-bit seed of the chain's generator.
        burn_in_swaps (int | None): Proposed swaps before the first output, ``None`` for the default heuristic.
        thinning_swaps (int | None): Proposed swaps between consecutive outputs, ``None`` for the default heuristic.
        chain (int): Index of the independent stream drawn from ``seed``.
    """

    n: int
    d: int
    seed: int = 0
    burn_in_swaps: int | None = None
    thinning_swaps: int | None = None
    chain: int = 0

    def __post_init__(self: Self) -> None:
        if self.n < 1:
            msg = f"n must be positive, got {self.n}"
            raise InfeasibleError(msg)
        if not 0 <= self.d <= self.n - 1:
            msg = f"d must lie in 0..{self.n - 1} for n={self.n}, got {self.d}"
            raise InfeasibleError(msg)
        if (self.n * self.d) % 2:
            msg = f"No {self.d}-regular graph on {self.n} vertices exists: d*n is odd"
            raise InfeasibleError(msg)
        if not 0 <= self.seed < 1 << 64:
            msg = f"seed must be an unsigned 64-bit integer, got {self.seed}"
            raise InfeasibleError(msg)
        for name in ("burn_in_swaps", "thinning_swaps"):
            value = getattr(self, name)
            if value is not None and value < 0:
                msg = f"{name} must be non-negative, got {value}"
                raise InfeasibleError(msg)

    @property
    def edge_count(self: Self) -> int:
        return self.n * self.d // 2

    @property
    def density(self: Self) -> Fraction:
        """``p = d/(n-1)``."""
        return Fraction(self.d, self.n - 1) if self.n > 1 else Fraction(0)

    @property
    def burn_in(self: Self) -> int:
        if self.burn_in_swaps is not None:
            return self.burn_in_swaps
        return _swap_heuristic(BURN_IN_FACTOR, self.edge_count)

    @property
    def thinning(self: Self) -> int:
        if self.thinning_swaps is not None:
            return self.thinning_swaps
        return _swap_heuristic(THINNING_FACTOR, self.edge_count)

    @property
    def samples_complement(self: Self) -> bool:
        """Whether the chain runs on the complement ensemble (``d > (n-1)/2``)."""
        return 2 * self.d > self.n - 1


def complement_spec(spec: EnsembleSpec) -> EnsembleSpec:
    """The same chain parameters over ``G(n, n-1-d)``."""
    return replace(spec, d=spec.n - 1 - spec.d)


def chain_spec(spec: EnsembleSpec, chain: int) -> EnsembleSpec:
    """Spec of independent chain ``chain``; its generator is ``seed``'s stream after ``chain`` jumps."""
    if chain < 0:
        msg = f"chain index must be non-negative, got {chain}"
        raise InfeasibleError(msg)
    return replace(spec, chain=chain)
