"""A small, fully specified 64-bit PRNG so instance streams are reproducible anywhere.

The generator is SplitMix64:

    state <- state + 0x9E3779B97F4A7C15            (mod 2^64)
    z <- state
    z <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (mod 2^64)
    z <- (z ^ (z >> 27)) * 0x94D049BB133111EB      (mod 2^64)
    output z ^ (z >> 31)

Derived quantities:

* uniform in [0, 1): ``(next >> 11) * 2^-53``
* standard normal: Box-Muller, ``sqrt(-2 log u1) * cos(2 pi u2)`` with
  ``u1 = ((next >> 11) + 1) * 2^-53`` in (0, 1] and ``u2`` uniform; one normal
  per two outputs, the sine branch is discarded.
* integer in [lo, hi): ``lo + next % (hi - lo)``.

Streams are forked with :func:`derive_seed`, which folds integer or string
keys into a seed with the SplitMix64 finalizer. There is no module-level
generator; every consumer receives a :class:`SplitMix64` explicitly.
"""

from __future__ import annotations

import hashlib
import math
from typing import Sequence, TypeVar

__all__ = ["SplitMix64", "mix64", "derive_seed"]

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_INV53 = 2.0**-53

T = TypeVar("T")


def mix64(z: int) -> int:
    """SplitMix64 output finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def _key_to_int(key: int | str) -> int:
    if isinstance(key, int):
        return key & MASK64
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "little")


def derive_seed(seed: int, *keys: int | str) -> int:
    """Fold ``keys`` into ``seed``; distinct key paths give independent streams."""
    h = seed & MASK64
    for key in keys:
        h = mix64(h ^ mix64((_key_to_int(key) + GOLDEN) & MASK64))
    return h


class SplitMix64:
    """SplitMix64 generator with the derived draws documented in the module docstring."""

    def __init__(self, seed: int):
        if seed < 0 or seed > MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.state = seed

    def __repr__(self) -> str:
        return f"SplitMix64(seed={self.seed:#x}, state={self.state:#x})"

    def split(self, *keys: int | str) -> "SplitMix64":
        """Independent child stream; depends only on the original seed and ``keys``."""
        return SplitMix64(derive_seed(self.seed, *keys))

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def random(self) -> float:
        return (self.next_u64() >> 11) * _INV53

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        return lo + (hi - lo) * self.random()

    def log_uniform(self, lo: float, hi: float) -> float:
        return math.exp(self.uniform(math.log(lo), math.log(hi)))

    def normal(self) -> float:
        u1 = ((self.next_u64() >> 11) + 1) * _INV53
        u2 = self.random()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def integers(self, lo: int, hi: int) -> int:
        if hi <= lo:
            raise ValueError(f"empty range [{lo}, {hi})")
        return lo + self.next_u64() % (hi - lo)

    def choice(self, items: Sequence[T]) -> T:
        return items[self.integers(0, len(items))]
