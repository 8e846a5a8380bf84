"""Counter-based SplitMix64 random streams.

Synthetic fixtures and the train/test permutation must be reproducible from
a seed alone, independently of any library's generator internals, so the
algorithm is spelled out here:

    value(i) = mix64(base + (i + 1) * GAMMA)            (mod 2**64)
    base     = mix64(seed ^ mix64(stream_id))
    GAMMA    = 0x9E3779B97F4A7C15
    mix64(z) : z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
               z ^= z >> 27; z *= 0x94D049BB133111EB;
               z ^= z >> 31                              (mod 2**64)

Each (seed, stream_id) pair is an independent stream; generators that need
several kinds of randomness draw each kind from its own stream so that
changing how much of one kind is consumed never shifts another.

Derived deviates:
    uniform double in (0, 1): ((value >> 11) + 0.5) * 2**-53
    standard normal:          Box-Muller on consecutive uniform pairs
    unit-variance Laplace:    inverse CDF, scale 1/sqrt(2)
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix64_int(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = z ^ (z >> np.uint64(30))
        z = z * np.uint64(_MIX1)
        z = z ^ (z >> np.uint64(27))
        z = z * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))


class Stream:
    """One deterministic deviate stream identified by (seed, stream_id)."""

    def __init__(self, seed: int, stream_id: int = 0):
        self.base = _mix64_int((seed & _MASK) ^ _mix64_int(stream_id & _MASK))
        self._count = 0

    def u64(self, n: int) -> np.ndarray:
        counter = np.arange(self._count + 1, self._count + n + 1, dtype=np.uint64)
        self._count += n
        with np.errstate(over="ignore"):
            state = np.uint64(self.base) + counter * np.uint64(_GAMMA)
        return _mix64_array(state)

    def uniform(self, n: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
        # (0, 1) open interval so log() downstream is always finite
        u = ((self.u64(n) >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
        return low + (high - low) * u

    def normal(self, n: int) -> np.ndarray:
        half = (n + 1) // 2
        u1 = self.uniform(half)
        u2 = self.uniform(half)
        r = np.sqrt(-2.0 * np.log(u1))
        z = np.concatenate([r * np.cos(2.0 * np.pi * u2), r * np.sin(2.0 * np.pi * u2)])
        return z[:n]

    def laplace(self, n: int, scale: float = 1.0 / np.sqrt(2.0)) -> np.ndarray:
        u = self.uniform(n) - 0.5
        return -scale * np.sign(u) * np.log1p(-2.0 * np.abs(u))

    def integers(self, n: int, low: int, high: int) -> np.ndarray:
        """Integers in [low, high] inclusive, by scaling a uniform draw."""
        span = high - low + 1
        return low + np.minimum((self.uniform(n) * span).astype(np.int64), span - 1)

    def permutation(self, n: int) -> np.ndarray:
        """Fisher-Yates shuffle of arange(n)."""
        idx = np.arange(n)
        if n < 2:
            return idx
        u = self.uniform(n - 1)
        for i in range(n - 1, 0, -1):
            j = int(u[n - 1 - i] * (i + 1))
            j = min(j, i)
            idx[i], idx[j] = idx[j], idx[i]
        return idx
