"""Deterministic 64-bit random number generation.

Everything seeded in this package flows through :class:`Rng` and
:func:`subseed`, both built on the SplitMix64 finalizer. The generator is
fully specified by integer arithmetic mod 2**64, so identical seeds produce
identical streams on any machine or language that reimplements it.

Stream derivation: ``subseed(a, b, "tag", ...)`` folds each part (strings are
FNV-1a-64 hashed first) into a running state with ``mix64(state ^ part)``.
Order matters; the result is a plain 64-bit seed.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """SplitMix64 finalizer: a bijective avalanche over 64-bit ints."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def fnv1a64(data: str | bytes) -> int:
    """FNV-1a 64-bit hash, used to turn stream tags into integers."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    h = 0xCBF29CE484222325
    for b in data:
        h = ((h ^ b) * 0x100000001B3) & MASK64
    return h


def subseed(*parts: int | str) -> int:
    """Derive a child seed from an ordered sequence of ints and tags.

    The mixing is sequence-sensitive: subseed(1, 2) != subseed(2, 1).
    """
    h = _GOLDEN
    for p in parts:
        if isinstance(p, str):
            p = fnv1a64(p)
        h = mix64(h ^ (p & MASK64))
    return h


class Rng:
    """SplitMix64 sequence generator.

    State advances by the golden-ratio increment; each output is the
    finalizer of the new state.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform int in [0, n). Plain modulo; bias is negligible for the
        small ranges used here and keeps the stream portable."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        return self.next_u64() % n

    def chance(self, p: float) -> bool:
        """True with probability p, quantized to 1/2**53."""
        return self.next_u64() >> 11 < p * 9007199254740992.0

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, high index down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def fork(self, *parts: int | str) -> "Rng":
        """Child generator whose stream is independent of this one's future."""
        return Rng(subseed(self.state, *parts))
