"""Seeded counter-based random streams.

A stream is addressed by the pair ``(seed, stream)``; distinct ids give
statistically independent sequences, so blocks of trials can be farmed out
to workers and merged without caring about worker count or ordering.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


class RandomStream:
    """Uniform [0, 1) draws from a 64-bit seeded counter-based generator."""

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed) & _MASK64
        self.stream = int(stream) & _MASK64
        key = np.array([self.seed, self.stream], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def uniform(self) -> float:
        """One draw; the n-th call returns the n-th value of the stream."""
        return float(self._gen.random())

    def uniforms(self, n: int) -> np.ndarray:
        """A block of draws, identical to n successive uniform() calls."""
        return self._gen.random(int(n))

    def derive(self, stream: int) -> "RandomStream":
        """A fresh independent stream under the same seed."""
        return RandomStream(self.seed, stream)

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.seed}, stream={self.stream})"
