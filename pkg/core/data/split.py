# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Time-forward train/validation split."""

from __future__ import annotations

import logging
import math

import numpy as np

from core.data.dataset import Dataset
from core.data.vocab import Vocab
from core.errors import ArgumentError

logger = logging.getLogger(__name__)


def time_split(ds: Dataset, val_fraction: float) -> tuple[Dataset, Dataset]:
    """Send the ceil(val_fraction · T) latest time_ids to validation.

    At least one time_id always stays in training. Both halves carry a
    vocabulary built from the training rows only, so ids first seen in
    validation map to the OOV row.
    """
    if not 0.0 <= val_fraction < 1.0:
        raise ArgumentError(f"val_fraction must lie in [0, 1), got {val_fraction}")
    times = np.unique(ds.time_id)
    n_val = 0
    if val_fraction > 0.0:
        if times.shape[0] < 2:
            raise ArgumentError(f"time_split needs >= 2 distinct time_ids, got {times.shape[0]}")
        # tolerance keeps 0.7 * 10 from rounding up to 8
        n_val = min(math.ceil(val_fraction * times.shape[0] - 1e-9), times.shape[0] - 1)
    if n_val == 0:
        train_idx = np.arange(ds.n_rows)
        val_idx = np.arange(0)
    else:
        cutoff = times[-n_val]
        is_val = ds.time_id >= cutoff
        train_idx = np.flatnonzero(~is_val)
        val_idx = np.flatnonzero(is_val)
    vocab = Vocab.from_ids(ds.investment_id[train_idx])
    train = ds.take(train_idx, vocab=vocab)
    val = ds.take(val_idx, vocab=vocab)
    logger.info(
        "time split: %d train rows / %d val rows, %d of %d time_ids held out",
        train.n_rows,
        val.n_rows,
        n_val,
        times.shape[0],
    )
    return train, val


__all__ = ["time_split"]
