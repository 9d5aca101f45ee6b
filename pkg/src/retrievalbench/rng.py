"""Portable, splittable pseudo-random streams.

All randomness in this package flows through SplitMix64 (Steele, Lea & Flood's
64-bit mixer, the same update used to seed xoshiro generators).  It is fixed
here rather than delegated to ``random.Random`` so that generated corpora are
byte-identical across platforms and Python versions.

Independent sub-streams are derived by hashing a parent seed together with a
sequence of string labels (blake2b, 8-byte digest).  Each generated field gets
its own labelled stream, so adding a new field to a generator never reshuffles
values drawn for existing fields.
"""

from __future__ import annotations

import hashlib

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def derive_seed(seed: int, *labels: str) -> int:
    """Mix a parent seed and string labels into a new 64-bit seed."""
    h = hashlib.blake2b(digest_size=8)
    h.update((seed & _MASK64).to_bytes(8, "big"))
    for label in labels:
        h.update(b"/")
        h.update(label.encode("utf-8"))
    return int.from_bytes(h.digest(), "big")


class Stream:
    """A SplitMix64 stream with unbiased integer draws.

    Bounded draws use rejection sampling, so every value in the requested
    range is exactly equally likely.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def split(self, *labels: str) -> "Stream":
        """Derive an independent child stream without advancing this one."""
        return Stream(derive_seed(self._state, *labels))

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], both ends inclusive."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.randrange(hi - lo + 1)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) / (1 << 53)

    def choice(self, seq):
        if not seq:
            raise ValueError("cannot choose from an empty sequence")
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), uniformly over subsets, shuffled."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot sample {k} from {n}")
        # Floyd's algorithm: uniform over k-subsets without materializing range(n).
        chosen: set[int] = set()
        out: list[int] = []
        for j in range(n - k, n):
            t = self.randint(0, j)
            if t in chosen:
                t = j
            chosen.add(t)
            out.append(t)
        self.shuffle(out)
        return out

    def sample(self, seq, k: int) -> list:
        return [seq[i] for i in self.sample_indices(len(seq), k)]


def stream(seed: int, *labels: str) -> Stream:
    """Open the labelled sub-stream of ``seed``."""
    return Stream(derive_seed(seed, *labels))
