# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Embedding lookup table.

Row 0 is reserved for out-of-vocabulary ids; real ids occupy 1..V-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from core.errors import ArgumentError, ShapeError, VocabIndexError
from core.tensor import RealMatrix, RngState, seeded_uniform

OOV_INDEX = 0
EMBEDDING_INIT_BOUND = 0.05


@dataclass
class EmbeddingTable:
    table: RealMatrix  # V × d

    def __post_init__(self) -> None:
        if self.table.ndim != 2:
            raise ShapeError("EmbeddingTable", self.table.shape)
        if self.vocab_size < 2 or self.dim < 1:
            raise ArgumentError(f"embedding needs V >= 2 and d >= 1, got V={self.vocab_size} d={self.dim}")

    @property
    def vocab_size(self) -> int:
        return int(self.table.shape[0])

    @property
    def dim(self) -> int:
        return int(self.table.shape[1])

    @property
    def compression_ratio(self) -> float:
        """One-hot width over dense width, (V - 1) / d."""
        return (self.vocab_size - 1) / self.dim

    def astype(self, dtype: Any) -> "EmbeddingTable":
        return EmbeddingTable(self.table.astype(dtype))

    def copy(self) -> "EmbeddingTable":
        return EmbeddingTable(self.table.copy())


def init_embedding(rng: RngState, vocab_size: int, dim: int, dtype: Any = np.float32) -> EmbeddingTable:
    b = EMBEDDING_INIT_BOUND
    return EmbeddingTable(seeded_uniform(rng, -b, b, vocab_size, dim, dtype=dtype))


def _check_ids(ids: np.ndarray, vocab_size: int, op: str) -> np.ndarray:
    ids = np.asarray(ids)
    if ids.ndim != 1:
        raise ShapeError(op, ids.shape, detail="ids must be a vector")
    if ids.size and not np.issubdtype(ids.dtype, np.integer):
        raise ArgumentError(f"{op}: ids must be integers, got {ids.dtype}")
    if ids.size and (ids.min() < 0 or ids.max() >= vocab_size):
        bad = int(ids[(ids < 0) | (ids >= vocab_size)][0])
        raise VocabIndexError(f"{op}: id index {bad} outside [0, {vocab_size})")
    return ids.astype(np.int64, copy=False)


def embedding_lookup(ids: np.ndarray, t: EmbeddingTable) -> RealMatrix:
    ids = _check_ids(ids, t.vocab_size, "embedding_lookup")
    return t.table[ids]


def embedding_backward(ids: np.ndarray, d_out: RealMatrix, vocab_size: int) -> RealMatrix:
    """Scatter-add of ``d_out`` rows into a V×d gradient table."""
    ids = _check_ids(ids, vocab_size, "embedding_backward")
    if d_out.ndim != 2 or d_out.shape[0] != ids.shape[0]:
        raise ShapeError("embedding_backward", d_out.shape, ids.shape)
    d_table = np.zeros((vocab_size, d_out.shape[1]), dtype=d_out.dtype)
    np.add.at(d_table, ids, d_out)
    return d_table


__all__ = [
    "EMBEDDING_INIT_BOUND",
    "EmbeddingTable",
    "OOV_INDEX",
    "embedding_backward",
    "embedding_lookup",
    "init_embedding",
]
