# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Raw investment id → dense embedding index."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from core.layers.embedding import OOV_INDEX


class Vocab:
    """Sorted raw ids mapped to 1..V-1; anything else maps to ``OOV_INDEX``."""

    def __init__(self, raw_ids: Iterable[int]):
        self._sorted = np.unique(np.asarray(list(raw_ids), dtype=np.int64))

    @classmethod
    def from_ids(cls, ids: np.ndarray) -> "Vocab":
        vocab = cls.__new__(cls)
        vocab._sorted = np.unique(np.asarray(ids, dtype=np.int64))
        return vocab

    @property
    def size(self) -> int:
        """V, including the reserved OOV row."""
        return int(self._sorted.shape[0]) + 1

    @property
    def raw_ids(self) -> np.ndarray:
        """Raw ids ordered by dense index (index 1 first)."""
        return self._sorted.copy()

    def lookup(self, raw: np.ndarray) -> np.ndarray:
        raw = np.asarray(raw, dtype=np.int64)
        if self._sorted.size == 0:
            return np.full(raw.shape, OOV_INDEX, dtype=np.int64)
        pos = np.searchsorted(self._sorted, raw)
        clipped = np.minimum(pos, self._sorted.size - 1)
        found = (pos < self._sorted.size) & (self._sorted[clipped] == raw)
        return np.where(found, pos + 1, OOV_INDEX).astype(np.int64)

    def __contains__(self, raw_id: int) -> bool:
        return bool(self.lookup(np.asarray([raw_id]))[0] != OOV_INDEX)

    def __len__(self) -> int:
        return int(self._sorted.shape[0])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Vocab) and np.array_equal(self._sorted, other._sorted)

    def __repr__(self) -> str:
        return f"Vocab(ids={len(self)})"


__all__ = ["Vocab"]
