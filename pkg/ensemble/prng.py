"""Platform-independent pseudo random numbers: splitmix64 seeding a xoshiro256** state."""

from __future__ import annotations

import math
from typing import Self

MASK64 = (1 << 64) - 1
_JUMP = (0x180EC6D33CFD0ABA, 0xD5A61266F0C9392C, 0xA9582618E03FC9AA, 0x39ABDC4529B1661C)


def _rotl(value: int, shift: int) -> int:
    return ((value << shift) | (value >> (64 - shift))) & MASK64


class SplitMix64(object):
    """The splitmix64 generator, used only to expand a 64-bit seed into a full state."""

    def __init__(self: Self, seed: int) -> None:
        self.state = seed & MASK64

    def next(self: Self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


class Xoshiro256StarStar(object):
    """xoshiro256** with 2^128-step ``jump`` for non-overlapping parallel streams."""

    def __init__(self: Self, seed: int) -> None:
        expander = SplitMix64(seed)
        self.state = [expander.next() for _ in range(4)]
        self._spare: float | None = None

    def next(self: Self) -> int:
        s = self.state
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def below(self: Self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by Lemire's multiply-shift rejection."""
        if bound <= 0:
            msg = f"bound must be positive, got {bound}"
            raise ValueError(msg)
        product = self.next() * bound
        low = product & MASK64
        if low < bound:
            threshold = ((1 << 64) - bound) % bound
            while low < threshold:
                product = self.next() * bound
                low = product & MASK64
        return product >> 64

    def next_double(self: Self) -> float:
        """Uniform float in ``[0, 1)`` with 53 random bits."""
        return (self.next() >> 11) * 2.0**-53

    def normal(self: Self) -> float:
        """Standard normal draw (Box-Muller, the second value of each pair is kept for the next call)."""
        if self._spare is not None:
            value, self._spare = self._spare, None
            return value
        u1 = 1.0 - self.next_double()
        u2 = self.next_double()
        radius = math.sqrt(-2.0 * math.log(u1))
        self._spare = radius * math.sin(2.0 * math.pi * u2)
        return radius * math.cos(2.0 * math.pi * u2)

    def jump(self: Self) -> None:
        """Advance the state by 2^128 steps."""
        accumulated = [0, 0, 0, 0]
        for word in _JUMP:
            for bit in range(64):
                if word & (1 << bit):
                    accumulated = [a ^ s for a, s in zip(accumulated, self.state, strict=True)]
                self.next()
        self.state = accumulated
        self._spare = None

    @classmethod
    def for_chain(cls, seed: int, chain: int) -> Xoshiro256StarStar:
        """Generator for chain ``chain`` of ``seed``: the base stream jumped ``chain`` times."""
        generator = cls(seed)
        for _ in range(chain):
            generator.jump()
        return generator
