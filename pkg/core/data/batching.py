# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Mini-batches over a Dataset."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional

import numpy as np

from core.data.dataset import Dataset
from core.data.vocab import Vocab
from core.errors import ArgumentError, ShapeError
from core.tensor import RngState, permutation


@dataclass(frozen=True)
class Batch:
    features: np.ndarray  # B × F
    ids: np.ndarray  # dense indices
    targets: np.ndarray
    rows: np.ndarray  # source row indices

    def __post_init__(self) -> None:
        b = self.features.shape[0]
        if b < 1 or self.ids.shape != (b,) or self.targets.shape != (b,):
            raise ShapeError("Batch", self.features.shape, self.ids.shape, self.targets.shape)

    @property
    def size(self) -> int:
        return int(self.features.shape[0])


def _batch(ds: Dataset, dense: np.ndarray, rows: np.ndarray) -> Batch:
    return Batch(features=ds.features[rows], ids=dense[rows], targets=ds.target[rows], rows=rows)


def _check(ds: Dataset, batch_size: int) -> None:
    if batch_size < 1:
        raise ArgumentError(f"batch_size must be >= 1, got {batch_size}")
    if ds.n_rows == 0:
        raise ArgumentError("cannot batch an empty dataset")


def make_batches(ds: Dataset, batch_size: int, rng: RngState, vocab: Optional[Vocab] = None) -> List[Batch]:
    """One epoch: a seeded permutation of all rows, chunked; the last batch may be short."""
    _check(ds, batch_size)
    dense = (vocab or ds.vocab).lookup(ds.investment_id)
    order = permutation(rng, ds.n_rows)
    return [_batch(ds, dense, order[start:start + batch_size]) for start in range(0, ds.n_rows, batch_size)]


def iter_batches(ds: Dataset, batch_size: int, vocab: Optional[Vocab] = None) -> Iterator[Batch]:
    """Rows in file order, no shuffling."""
    _check(ds, batch_size)
    dense = (vocab or ds.vocab).lookup(ds.investment_id)
    for start in range(0, ds.n_rows, batch_size):
        yield _batch(ds, dense, np.arange(start, min(start + batch_size, ds.n_rows)))


__all__ = ["Batch", "iter_batches", "make_batches"]
