# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Seeded random source.

Every draw goes through numpy's PCG64 bit generator seeded via
``SeedSequence``; the platform RNG and numpy's global state are never used.
PCG64 streams are stable across platforms and numpy releases, so equal seeds
give equal draws everywhere.
"""

from __future__ import annotations

import zlib

import numpy as np


def _label_key(label: str | int) -> int:
    if isinstance(label, int):
        return label & 0xFFFFFFFF
    return zlib.crc32(str(label).encode("utf-8"))


class RngState:
    """Mutable handle over one PCG64 stream."""

    def __init__(self, seed: int, _spawn_key: tuple[int, ...] = ()):
        if seed < 0 or seed >= 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = int(seed)
        self.spawn_key = tuple(_spawn_key)
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=self.spawn_key)
        self.generator = np.random.Generator(np.random.PCG64(sequence))

    def child(self, *labels: str | int) -> "RngState":
        """Independent stream derived from the seed and ``labels``.

        Children depend only on the root seed and the label path, never on how
        many draws the parent has made.
        """
        key = self.spawn_key + tuple(_label_key(label) for label in labels)
        return RngState(self.seed, key)

    def __repr__(self) -> str:
        return f"RngState(seed={self.seed}, spawn_key={self.spawn_key})"


__all__ = ["RngState"]
