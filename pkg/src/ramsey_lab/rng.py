"""Deterministic random streams for reproducible, schedule-independent runs.

A stream is a value, not a stateful generator: drawing from the same
stream always replays the same sequence, and independent substreams are
derived by hashing integer labels into the stream index.  Randomness is
backed by the Philox counter-based bit generator keyed on
(master_seed, stream_index), so every draw is a pure function of the key
and the draw position -- results cannot depend on iteration order or on
how work is split across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    # Standard 64-bit avalanche finalizer; used only to derive labels.
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


@dataclass(frozen=True)
class RngStream:
    """One stream in a keyed family of independent random sequences.

    ``master_seed`` names the family (an experiment's seed) and
    ``stream_index`` names one member, normally obtained via :meth:`child`
    with labels such as (row, trial).  Two streams with distinct indices
    are statistically independent Philox streams.
    """

    master_seed: int
    stream_index: int = 0

    def child(self, *labels: int) -> "RngStream":
        """Derive the substream named by one or more integer labels."""
        if not labels:
            raise ValueError("child() requires at least one label")
        index = self.stream_index & _MASK64
        for label in labels:
            index = _splitmix64(index ^ _splitmix64(int(label) & _MASK64))
        return RngStream(self.master_seed, index)

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        key = np.array(
            [self.master_seed & _MASK64, self.stream_index & _MASK64],
            dtype=np.uint64,
        )
        return np.random.Generator(np.random.Philox(key=key))

    def uniforms(self, count: int) -> np.ndarray:
        """First ``count`` uniforms of this stream (same values every call)."""
        if count < 0:
            raise ValueError("count must be non-negative")
        return self.generator().random(count)
