"""Deterministic pseudo-random generation for reproducible trials.

The generator is SplitMix64: a tiny, well-studied 64-bit mixer with exactly
reproducible output on every platform and Python build.  All randomized
verification commands derive their trial data from it, so a (seed, version)
pair fully determines a run report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


@dataclass
class SplitMix64:
    """SplitMix64 pseudo-random generator over 64-bit integers."""

    state: int = 0

    def next_u64(self) -> int:
        """Return the next 64-bit output."""
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the inclusive range [lo, hi].

        Uses rejection sampling so the distribution is exactly uniform and
        platform independent.
        """
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        # Largest multiple of span not exceeding 2**64.
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            r = self.next_u64()
            if r < limit:
                return lo + (r % span)

    def fraction(
        self,
        max_num: int,
        max_den: int,
        nonzero: bool = False,
        allow_negative: bool = True,
    ) -> Fraction:
        """Random fraction with |numerator| <= max_num, 1 <= denominator <= max_den."""
        while True:
            num = self.randint(-max_num if allow_negative else 0, max_num)
            den = self.randint(1, max_den)
            value = Fraction(num, den)
            if nonzero and value == 0:
                continue
            return value

    def choice(self, seq):
        """Uniformly pick an element of a non-empty sequence."""
        return seq[self.randint(0, len(seq) - 1)]
