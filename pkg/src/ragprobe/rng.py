"""Portable deterministic random generator used for all sampling.

The generator is SplitMix64 (Steele, Lea & Flood's mixer) with Lemire
multiply-shift bounding. It is tiny, has no Python-version dependence, and
can be reimplemented in any language so that dataset files reproduce
bit-for-bit from the recorded seeds. The exact recurrence is documented in
the README's file-format section.
"""

from __future__ import annotations

import hashlib
from typing import Sequence, TypeVar

_MASK64 = (1 << 64) - 1

T = TypeVar("T")


def derive_seed(seed: int, *labels: object) -> int:
    """Mix a base seed with contextual labels into a new 64-bit seed."""
    material = ":".join([str(seed)] + [str(x) for x in labels])
    digest = hashlib.sha256(material.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


class SplitMix64:
    """Deterministic 64-bit generator; same seed always yields same stream."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via Lemire multiply-shift."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return (self.next_u64() * bound) >> 64

    def sample(self, items: Sequence[T], k: int) -> list[T]:
        """k distinct items drawn without replacement (partial Fisher-Yates)."""
        pool = list(items)
        n = len(pool)
        if k > n:
            raise ValueError(f"cannot sample {k} from {n} items")
        for i in range(k):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def choice(self, items: Sequence[T]) -> T:
        if not items:
            raise ValueError("cannot choose from empty sequence")
        return items[self.below(len(items))]
