# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Columnar in-memory dataset in the market panel schema."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Tuple

import numpy as np

from core.data.vocab import Vocab
from core.errors import SchemaError, ShapeError


@dataclass(frozen=True)
class SynthTruth:
    """Generating parameters of a synthetic dataset, kept for oracle checks."""

    weights: np.ndarray  # length F
    id_effects: dict  # raw investment_id -> additive effect
    nonlinearity: float
    noise_std: float

    def linear_part(self, features: np.ndarray) -> np.ndarray:
        return np.asarray(features, dtype=np.float64) @ self.weights


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Dataset:
    time_id: np.ndarray
    investment_id: np.ndarray
    target: np.ndarray
    features: np.ndarray
    feature_names: Tuple[str, ...]
    vocab: Vocab
    row_id: Optional[np.ndarray] = None
    has_target: bool = True
    truth: Optional[SynthTruth] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        n = self.time_id.shape[0]
        for name in ("investment_id", "target"):
            if getattr(self, name).shape != (n,):
                raise ShapeError("Dataset", getattr(self, name).shape, (n,), detail=name)
        if self.features.ndim != 2 or self.features.shape[0] != n:
            raise ShapeError("Dataset", self.features.shape, (n, len(self.feature_names)), detail="features")
        if self.features.shape[1] != len(self.feature_names):
            raise ShapeError("Dataset", self.features.shape, (n, len(self.feature_names)), detail="feature_names")
        if self.row_id is not None and self.row_id.shape != (n,):
            raise ShapeError("Dataset", self.row_id.shape, (n,), detail="row_id")
        object.__setattr__(self, "time_id", _frozen(self.time_id.astype(np.int64, copy=False)))
        object.__setattr__(self, "investment_id", _frozen(self.investment_id.astype(np.int64, copy=False)))
        object.__setattr__(self, "target", _frozen(self.target.astype(np.float64, copy=False)))
        object.__setattr__(self, "features", _frozen(self.features.astype(np.float32, copy=False)))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if self.row_id is not None:
            object.__setattr__(self, "row_id", _frozen(self.row_id))

    @property
    def n_rows(self) -> int:
        return int(self.time_id.shape[0])

    def __len__(self) -> int:
        return self.n_rows

    @property
    def feature_count(self) -> int:
        return len(self.feature_names)

    @property
    def dense_ids(self) -> np.ndarray:
        return self.vocab.lookup(self.investment_id)

    def row_ids(self) -> np.ndarray:
        if self.row_id is not None:
            return self.row_id
        return np.array([f"{t}_{i}" for t, i in zip(self.time_id, self.investment_id)], dtype=object)

    def take(self, indices: np.ndarray, vocab: Optional[Vocab] = None) -> "Dataset":
        idx = np.asarray(indices, dtype=np.int64)
        return replace(
            self,
            time_id=self.time_id[idx],
            investment_id=self.investment_id[idx],
            target=self.target[idx],
            features=self.features[idx],
            row_id=self.row_id[idx] if self.row_id is not None else None,
            vocab=vocab if vocab is not None else self.vocab,
        )

    def with_vocab(self, vocab: Vocab) -> "Dataset":
        return replace(self, vocab=vocab)

    def select_features(self, names: Sequence[str]) -> "Dataset":
        """Restrict (and reorder) feature columns to ``names``."""
        names = list(names)
        if names == list(self.feature_names):
            return self
        position = {name: idx for idx, name in enumerate(self.feature_names)}
        missing = [name for name in names if name not in position]
        if missing:
            raise SchemaError(f"missing feature column {missing[0]}", column=missing[0])
        cols = [position[name] for name in names]
        return replace(self, features=self.features[:, cols], feature_names=tuple(names))


def feature_names_for(count: int) -> Tuple[str, ...]:
    return tuple(f"f_{idx}" for idx in range(count))


__all__ = ["Dataset", "SynthTruth", "feature_names_for"]
