"""Seeded random source shared by all heuristics."""

from __future__ import annotations

import random


class Rng(random.Random):
    """``random.Random`` (MT19937) with the few helpers the heuristics use.

    Outputs depend only on the seed and on the sequence of calls, which
    CPython keeps stable across platforms for ``random()``, ``shuffle``,
    ``choice`` and ``getrandbits``.
    """

    def spawn(self) -> Rng:
        """A child stream seeded from 64 bits of this stream."""
        return Rng(self.getrandbits(64))

    def uniform01(self) -> float:
        """One draw from the half-open interval [0, 1)."""
        return self.random()
