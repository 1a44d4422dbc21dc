# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

from __future__ import annotations

import numpy as np

from core.errors import ShapeError
from core.tensor import RealMatrix


def concat_cols(a: RealMatrix, b: RealMatrix) -> RealMatrix:
    if a.ndim != 2 or b.ndim != 2 or a.shape[0] != b.shape[0]:
        raise ShapeError("concat_cols", a.shape, b.shape)
    return np.concatenate([a, b], axis=1)


def split_cols(x: RealMatrix, p: int) -> tuple[RealMatrix, RealMatrix]:
    """Inverse of ``concat_cols``: first ``p`` columns, then the rest."""
    if x.ndim != 2 or not 0 <= p <= x.shape[1]:
        raise ShapeError("split_cols", x.shape, detail=f"split at {p}")
    return np.ascontiguousarray(x[:, :p]), np.ascontiguousarray(x[:, p:])


__all__ = ["concat_cols", "split_cols"]
