# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Training loss.

The training objective is isolated here; swapping it is a change to
``LOSSES`` and nothing else.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from core.errors import ArgumentError, ShapeError


def mse(pred: np.ndarray, target: np.ndarray) -> tuple[float, np.ndarray]:
    """Mean squared error and its gradient w.r.t. ``pred`` (same shape as ``pred``)."""
    p = np.asarray(pred)
    t = np.asarray(target)
    if p.size != t.size:
        raise ShapeError("mse", p.shape, t.shape)
    if p.size == 0:
        raise ArgumentError("mse: empty input")
    diff = p.reshape(-1) - t.reshape(-1).astype(p.dtype, copy=False)
    n = diff.shape[0]
    loss = float(np.dot(diff, diff) / n)
    d_pred = (2.0 / n) * diff
    return loss, d_pred.astype(p.dtype, copy=False).reshape(p.shape)


LossFn = Callable[[np.ndarray, np.ndarray], tuple[float, np.ndarray]]

LOSSES: dict[str, LossFn] = {"mse": mse}


def get_loss(name: str) -> LossFn:
    try:
        return LOSSES[name]
    except KeyError:
        raise ArgumentError(f"unknown loss {name!r}; known: {sorted(LOSSES)}") from None


__all__ = ["LOSSES", "LossFn", "get_loss", "mse"]
