"""Deterministic 64-bit PRNG (splitmix64).

All randomized generators in this package draw from this stream so that a
given (args, seed) pair reproduces bit-identical output on any platform.
The state transition is the standard splitmix64 one:

    state <- state + 0x9E3779B97F4A7C15            (mod 2^64)
    z <- state
    z <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9    (mod 2^64)
    z <- (z xor (z >> 27)) * 0x94D049BB133111EB    (mod 2^64)
    output <- z xor (z >> 31)

Doubles are built from the top 53 bits, uniform in [0, 1).
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """Seeded splitmix64 stream with uniform/gaussian helpers."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        return _mix(self.state)

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform_open(self) -> float:
        """Uniform double in (0, 1], safe as a log() argument."""
        return ((self.next_u64() >> 11) + 1) * 2.0**-53

    def uniform_range(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()

    def gaussian(self) -> float:
        """Standard normal via Box-Muller (one value per pair of draws)."""
        u1 = self.uniform_open()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def complex_gaussian(self) -> complex:
        return complex(self.gaussian(), self.gaussian())

    def derive(self, key: int) -> "SplitMix64":
        """Independent substream keyed by an integer (used per frame element)."""
        return SplitMix64(_mix((self.state ^ _mix(key & _MASK)) & _MASK))
