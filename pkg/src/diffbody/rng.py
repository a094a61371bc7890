"""Reproducible random streams.

All randomness comes from numpy's Philox-4x64 counter-based bit generator
keyed by the user seed. Only ``random_raw()`` 64-bit words are consumed, and
they are mapped to values by the fixed rules below, so results do not depend
on numpy's ``Generator`` distribution code.

Seed derivation for sub-streams (multi-start climbs, sample partitions):
the key is ``(seed, stream)`` and a partition starting at sample ``i``
advances the counter to word ``i * words_per_sample``. A Monte-Carlo
estimate is therefore identical however the samples are split into chunks.

Mapping rules:

* integer in ``[lo, hi]``: ``lo + word % (hi - lo + 1)``
* float in ``[0, 1)``: ``(word >> 11) * 2**-53``
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


def bit_generator(seed: int, stream: int = 0, offset_words: int = 0) -> np.random.Philox:
    key = np.array([seed & MASK64, stream & MASK64], dtype=np.uint64)
    bg = np.random.Philox(key=key)
    if offset_words:
        # each Philox counter step yields four 64-bit words
        q, r = divmod(offset_words, 4)
        if q:
            bg.advance(q)
        if r:
            bg.random_raw(r)
    return bg


class Stream:
    """Scalar draws for the sequential parts (polytope generation, climbs)."""

    def __init__(self, seed: int, stream: int = 0):
        self.seed = seed
        self.stream = stream
        self._bg = bit_generator(seed, stream)
        self._buf: list[int] = []

    def word(self) -> int:
        if not self._buf:
            self._buf = [int(w) for w in self._bg.random_raw(256)][::-1]
        return self._buf.pop()

    def integer(self, lo: int, hi: int) -> int:
        return lo + self.word() % (hi - lo + 1)

    def uniform(self) -> float:
        return (self.word() >> 11) * 2.0 ** -53


def uniform_block(seed: int, start: int, count: int, dim: int, stream: int = 0) -> np.ndarray:
    """Samples ``start .. start+count-1`` of the uniform stream, shape (count, dim)."""
    bg = bit_generator(seed, stream, offset_words=start * dim)
    words = bg.random_raw(count * dim)
    return ((words >> np.uint64(11)).astype(np.float64) * 2.0 ** -53).reshape(count, dim)
