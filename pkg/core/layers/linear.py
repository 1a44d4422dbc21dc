# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Fully connected layer: y = x·W + b."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from core.errors import ShapeError
from core.tensor import RealMatrix, RngState, add_bias_rows, column_sums, matmul, seeded_uniform


@dataclass
class LinearParams:
    weight: RealMatrix  # in × out
    bias: np.ndarray  # length out

    def __post_init__(self) -> None:
        if self.weight.ndim != 2 or self.bias.ndim != 1 or self.bias.shape[0] != self.weight.shape[1]:
            raise ShapeError("LinearParams", self.weight.shape, self.bias.shape)

    @property
    def in_features(self) -> int:
        return int(self.weight.shape[0])

    @property
    def out_features(self) -> int:
        return int(self.weight.shape[1])

    @property
    def size(self) -> int:
        return int(self.weight.size + self.bias.size)

    def astype(self, dtype: Any) -> "LinearParams":
        return LinearParams(self.weight.astype(dtype), self.bias.astype(dtype))

    def copy(self) -> "LinearParams":
        return LinearParams(self.weight.copy(), self.bias.copy())


def glorot_bound(fan_in: int, fan_out: int) -> float:
    return float(np.sqrt(6.0 / (fan_in + fan_out)))


def init_linear(rng: RngState, fan_in: int, fan_out: int, dtype: Any = np.float32) -> LinearParams:
    """Uniform on [-s, s] with s = sqrt(6 / (fan_in + fan_out)); zero bias."""
    s = glorot_bound(fan_in, fan_out)
    weight = seeded_uniform(rng, -s, s, fan_in, fan_out, dtype=dtype)
    return LinearParams(weight, np.zeros(fan_out, dtype=dtype))


def linear_forward(x: RealMatrix, p: LinearParams) -> RealMatrix:
    if x.ndim != 2 or x.shape[1] != p.in_features:
        raise ShapeError("linear_forward", x.shape, p.weight.shape)
    return add_bias_rows(matmul(x, p.weight), p.bias)


def linear_backward(
    x: RealMatrix, p: LinearParams, d_out: RealMatrix
) -> tuple[RealMatrix, RealMatrix, np.ndarray]:
    """Returns (d_x, d_weight, d_bias)."""
    if x.ndim != 2 or x.shape[1] != p.in_features:
        raise ShapeError("linear_backward", x.shape, p.weight.shape)
    if d_out.shape != (x.shape[0], p.out_features):
        raise ShapeError("linear_backward", d_out.shape, (x.shape[0], p.out_features))
    d_x = matmul(d_out, p.weight, transpose_b=True)
    d_weight = matmul(x, d_out, transpose_a=True)
    d_bias = column_sums(d_out)
    return d_x, d_weight, d_bias


__all__ = [
    "LinearParams",
    "glorot_bound",
    "init_linear",
    "linear_backward",
    "linear_forward",
]
