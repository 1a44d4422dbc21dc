# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Swish activation, y = x·σ(x)."""

from __future__ import annotations

import numpy as np

from core.tensor import RealMatrix


def sigmoid(x: RealMatrix) -> RealMatrix:
    # branch form: exp is only ever taken of a non-positive argument
    z = np.exp(-np.abs(x))
    return np.where(x >= 0, 1.0 / (1.0 + z), z / (1.0 + z)).astype(x.dtype, copy=False)


def swish(x: RealMatrix) -> RealMatrix:
    return x * sigmoid(x)


def swish_grad(x: RealMatrix) -> RealMatrix:
    """Elementwise d swish / dx = σ(x) + x·σ(x)·(1 − σ(x))."""
    s = sigmoid(x)
    return s + x * s * (1.0 - s)


def swish_backward(x: RealMatrix, d_out: RealMatrix) -> RealMatrix:
    return d_out * swish_grad(x)


__all__ = ["sigmoid", "swish", "swish_backward", "swish_grad"]
