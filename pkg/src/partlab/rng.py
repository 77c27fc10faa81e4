"""Seedable, splittable random streams.

Built on the Philox counter-based bit generator keyed by
(seed, stream_id), so any trial index can own an independent stream
while staying bit-reproducible across runs and platforms.  A stream is
single-owner mutable state; hand each worker its own substream instead
of sharing one.
"""

from __future__ import annotations

import numpy as np

__all__ = ["RandomStream"]

_MASK64 = (1 << 64) - 1


class RandomStream:
    """A seeded random stream with named, independent substreams.

    The pair (seed, stream_id) fully determines the variate sequence.
    """

    def __init__(self, seed, stream_id=0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        key = np.array(
            [self.seed & _MASK64, self.stream_id & _MASK64], dtype=np.uint64
        )
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def __repr__(self):
        return f"RandomStream(seed={self.seed}, stream_id={self.stream_id})"

    def substream(self, stream_id):
        """Fresh independent stream with the same seed and a new id."""
        return RandomStream(self.seed, stream_id)

    def uniform(self, size=None):
        """Uniform variates on [0, 1)."""
        return self._gen.random(size)

    def uniform_open(self, size=None):
        """Uniform variates on the open interval (0, 1); zeros are redrawn."""
        if size is None:
            u = self._gen.random()
            while u == 0.0:
                u = self._gen.random()
            return u
        u = self._gen.random(size)
        mask = u == 0.0
        while mask.any():
            u[mask] = self._gen.random(int(mask.sum()))
            mask = u == 0.0
        return u

    def exponential(self, size=None):
        """Mean-1 exponentials by inverse CDF on open-interval uniforms."""
        return -np.log(self.uniform_open(size))

    def standard_normal(self, size=None):
        return self._gen.standard_normal(size)

    def gamma(self, shape, size=None):
        """Gamma(shape, scale=1); for integer shape, the law of a sum of
        that many unit exponentials."""
        return self._gen.gamma(shape, size=size)

    def integer_below(self, bound):
        """Uniform integer in [0, bound) for arbitrary-precision bounds.

        Draws the minimal number of random bytes, masks to the bit
        width of bound-1, and rejects overshoots, so the result is
        exactly uniform even when bound exceeds 2**64.
        """
        bound = int(bound)
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound == 1:
            return 0
        bits = (bound - 1).bit_length()
        nbytes = (bits + 7) // 8
        mask = (1 << bits) - 1
        while True:
            r = int.from_bytes(self._gen.bytes(nbytes), "little") & mask
            if r < bound:
                return r
