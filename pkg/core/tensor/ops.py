# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Dense 2-D kernels every layer is built on.

A RealMatrix is a C-contiguous 2-D ``numpy.ndarray`` of float32 (float64 for
gradient checks and metric oracles).
"""

from __future__ import annotations

import logging
from typing import Any

import numpy as np

from core.errors import ArgumentError, ShapeError
from core.tensor.rng import RngState

logger = logging.getLogger(__name__)

DEFAULT_DTYPE = np.float32
RealMatrix = np.ndarray

_DETERMINISTIC = True


def set_deterministic(flag: bool) -> None:
    """Choose the default ``matmul`` kernel: fixed-order (True) or BLAS (False)."""
    global _DETERMINISTIC
    _DETERMINISTIC = bool(flag)
    logger.debug("matmul deterministic mode=%s", _DETERMINISTIC)


def is_deterministic() -> bool:
    return _DETERMINISTIC


def as_matrix(values: Any, dtype: Any = None) -> RealMatrix:
    """Coerce ``values`` into a contiguous 2-D real array.

    1-D input becomes a single row. ``dtype`` defaults to the input's float
    type, or float32 for non-float input. NaN or infinite entries raise
    ``ArgumentError``.
    """
    arr = np.asarray(values)
    if dtype is None:
        dtype = arr.dtype if arr.dtype in (np.float32, np.float64) else DEFAULT_DTYPE
    arr = np.ascontiguousarray(arr, dtype=dtype)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ShapeError("as_matrix", arr.shape, detail="expected 2-D")
    if not all_finite(arr):
        row, col = (int(v) for v in np.argwhere(~np.isfinite(arr))[0])
        raise ArgumentError(f"as_matrix: non-finite value {arr[row, col]!r} at ({row}, {col})")
    return arr


def zeros(m: int, n: int, dtype: Any = DEFAULT_DTYPE) -> RealMatrix:
    return np.zeros((m, n), dtype=dtype)


def identity(n: int, dtype: Any = DEFAULT_DTYPE) -> RealMatrix:
    return np.eye(n, dtype=dtype)


def _fixed_order_product(a: RealMatrix, b: RealMatrix, dtype: Any) -> RealMatrix:
    # out[i, j] = (((a[i,0]*b[0,j]) + a[i,1]*b[1,j]) + ...) in k-ascending order,
    # each product and sum rounded to ``dtype``.
    m, k = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), dtype=dtype)
    term = np.empty((m, n), dtype=dtype)
    for kk in range(k):
        np.multiply(a[:, kk, None], b[None, kk, :], out=term)
        out += term
    return out


def matmul(
    a: RealMatrix,
    b: RealMatrix,
    transpose_a: bool = False,
    transpose_b: bool = False,
    *,
    deterministic: bool | None = None,
) -> RealMatrix:
    """Matrix product ``op(a) @ op(b)``.

    The default kernel sums in fixed k-ascending order, single-threaded, and
    matches a naive triple loop bitwise on every platform.
    ``deterministic=False`` (or ``set_deterministic(False)``, which is what
    ``EDBN_FAST_MATMUL`` does) uses numpy's BLAS-backed ``matmul`` instead;
    its summation order depends on the BLAS build and CPU.
    """
    lhs = a.T if transpose_a else a
    rhs = b.T if transpose_b else b
    if lhs.ndim != 2 or rhs.ndim != 2 or lhs.shape[1] != rhs.shape[0]:
        raise ShapeError("matmul", lhs.shape, rhs.shape)
    dtype = np.result_type(lhs.dtype, rhs.dtype)
    use_fixed = _DETERMINISTIC if deterministic is None else deterministic
    if use_fixed:
        return _fixed_order_product(lhs.astype(dtype, copy=False), rhs.astype(dtype, copy=False), dtype)
    return np.ascontiguousarray(np.matmul(lhs, rhs), dtype=dtype)


def add_bias_rows(x: RealMatrix, bias: np.ndarray) -> RealMatrix:
    """Add ``bias`` to every row of ``x``."""
    bias = np.asarray(bias).reshape(-1)
    if x.ndim != 2 or bias.shape[0] != x.shape[1]:
        raise ShapeError("add_bias_rows", x.shape, bias.shape)
    return x + bias.astype(x.dtype, copy=False)[None, :]


def column_sums(x: RealMatrix) -> np.ndarray:
    return x.sum(axis=0, dtype=x.dtype)


def seeded_uniform(
    rng: RngState, lo: float, hi: float, m: int, n: int, dtype: Any = DEFAULT_DTYPE
) -> RealMatrix:
    """m×n draws, i.i.d. uniform on [lo, hi). Advances ``rng``."""
    if lo > hi:
        raise ArgumentError(f"seeded_uniform: lo={lo} exceeds hi={hi}")
    if m < 0 or n < 0:
        raise ArgumentError(f"seeded_uniform: negative shape {m}x{n}")
    unit = rng.generator.random((m, n), dtype=np.float64)
    out = (lo + (hi - lo) * unit).astype(dtype)
    if hi > lo:
        # rounding to float32 can land exactly on hi
        ceiling = np.nextafter(np.asarray(hi, dtype=dtype), np.asarray(lo, dtype=dtype))
        np.minimum(out, ceiling, out=out)
    return out


def seeded_normal(
    rng: RngState, mean: float, std: float, m: int, n: int, dtype: Any = np.float64
) -> RealMatrix:
    if std < 0:
        raise ArgumentError(f"seeded_normal: negative std {std}")
    draws = rng.generator.standard_normal((m, n), dtype=np.float64)
    return (mean + std * draws).astype(dtype)


def permutation(rng: RngState, n: int) -> np.ndarray:
    return rng.generator.permutation(n)


def all_finite(x: np.ndarray) -> bool:
    return bool(np.isfinite(x).all())


__all__ = [
    "DEFAULT_DTYPE",
    "RealMatrix",
    "add_bias_rows",
    "all_finite",
    "as_matrix",
    "column_sums",
    "identity",
    "is_deterministic",
    "matmul",
    "permutation",
    "seeded_normal",
    "seeded_uniform",
    "set_deterministic",
    "zeros",
]
