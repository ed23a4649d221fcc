"""Deterministic rational sampling used by certificates and fixture checks.

A splitmix64 stream keeps the sample sequences identical across platforms and
Python versions; the default seed is 0xC0FFEE.  Samples are strictly positive
rationals with raw numerator and denominator drawn from 1..1000.
"""

from __future__ import annotations

from fractions import Fraction

DEFAULT_SEED = 0xC0FFEE

_MASK = (1 << 64) - 1


class SplitMix64:
    """64-bit splitmix generator; deterministic and platform independent."""

    def __init__(self, seed: int = DEFAULT_SEED):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform draw from range(bound) by rejection on the top chunk."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound

    def rational(self, max_numerator: int = 1000, max_denominator: int = 1000) -> Fraction:
        """Strictly positive rational with parts drawn from 1..max."""
        return Fraction(1 + self.below(max_numerator), 1 + self.below(max_denominator))

    def point(self, dimension: int) -> tuple[Fraction, ...]:
        return tuple(self.rational() for _ in range(dimension))
