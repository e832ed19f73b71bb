"""Deterministic 64-bit pseudorandom generator used by every search.

SplitMix64: the state advances by a fixed odd increment and each output is a
bijective mix of the new state.  Streams for independent searches are derived
by injective mixing of (master seed, start index), so results never depend on
scheduling order or worker count.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """Finalizing bijection on 64-bit integers (Stafford variant 13)."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Generator with the explicit advance rule: state += GAMMA; out = mix64(state)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    @property
    def state(self) -> int:
        return self._state

    def next64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return mix64(self._state)

    def randbelow(self, bound: int) -> int:
        """Unbiased draw from [0, bound) by rejection."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next64()
            if r < limit:
                return r % bound

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in [low, high], inclusive."""
        if high < low:
            raise ValueError(f"empty interval [{low}, {high}]")
        return low + self.randbelow(high - low + 1)

    def shuffle(self, seq) -> None:
        """In-place unbiased Fisher-Yates shuffle."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.randbelow(i + 1)
            seq[i], seq[j] = seq[j], seq[i]


def derive_seed(master_seed: int, start_index: int) -> int:
    """Injective (for fixed master) mix of master seed and start index.

    Distinct indices map to distinct generator states: index scaling by the odd
    constant GAMMA is a bijection mod 2**64 and mix64 is a bijection.
    """
    if start_index < 0:
        raise ValueError(f"start_index must be non-negative, got {start_index}")
    return mix64((master_seed + _GAMMA * (start_index + 1)) & _MASK64)
