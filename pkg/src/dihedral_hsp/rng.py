"""Portable seeded random stream (SplitMix64).

The bit stream is fully specified so that other implementations can
reproduce every experiment from the same seed:

    state_0 = seed mod 2**64
    state_i = state_{i-1} + 0x9E3779B97F4A7C15          (mod 2**64)
    z = state_i
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9            (mod 2**64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB            (mod 2**64)
    output_i = z ^ (z >> 31)

Uniform doubles are ``(output_i >> 11) * 2**-53`` in ``[0, 1)``.  Because the
i-th output depends only on ``seed + i*GAMMA``, blocks of the stream can be
generated in one vectorised numpy call.

Substreams are derived with :func:`derive_seed`, which hashes the root seed
together with a path of tags (``derive_seed(7, "trial", 3)``) using BLAKE2b
with an 8-byte digest, read little-endian.
"""

from __future__ import annotations

import hashlib

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finaliser; a bijection on 64-bit integers."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def derive_seed(root: int, *path) -> int:
    """Deterministic 64-bit child seed for ``root`` and a tag path."""
    text = "/".join([str(int(root) & MASK64)] + [str(p) for p in path])
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "little")


class SplitMix64:
    """Seeded stream of 64-bit words and uniforms.

    >>> rng = SplitMix64(0)
    >>> hex(rng.next_u64())
    '0xe220a8397b1dcdaf'
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & MASK64
        self.counter = 0

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.seed + self.counter * GAMMA)

    def u64(self, n: int) -> np.ndarray:
        """Next ``n`` words as a ``uint64`` array."""
        steps = np.arange(self.counter + 1, self.counter + n + 1, dtype=np.uint64)
        self.counter += n
        with np.errstate(over="ignore"):
            states = np.uint64(self.seed) + steps * np.uint64(GAMMA)
            return _mix64_array(states)

    def random(self, n: int | None = None):
        """Uniform double(s) in ``[0, 1)`` from the top 53 bits."""
        if n is None:
            return (self.next_u64() >> 11) * 2.0**-53
        return (self.u64(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def integers(self, high: int, n: int | None = None):
        """Uniform integer(s) in ``[0, high)``.

        Uses floor(u * high) on the 53-bit uniform; the bias is below
        ``high / 2**53`` and irrelevant at desk scale.
        """
        if high < 1:
            raise ValueError("high must be positive")
        if n is None:
            return int(self.random() * high)
        return np.floor(self.random(n) * high).astype(np.int64)

    def spawn(self, *path) -> "SplitMix64":
        """Independent child stream; consumes one word of this stream."""
        return SplitMix64(derive_seed(self.next_u64(), *path))


def as_rng(seed_or_rng) -> SplitMix64:
    if isinstance(seed_or_rng, SplitMix64):
        return seed_or_rng
    return SplitMix64(0 if seed_or_rng is None else seed_or_rng)
