# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

from core.tensor.ops import (
    DEFAULT_DTYPE,
    RealMatrix,
    add_bias_rows,
    all_finite,
    as_matrix,
    column_sums,
    identity,
    is_deterministic,
    matmul,
    permutation,
    seeded_normal,
    seeded_uniform,
    set_deterministic,
    zeros,
)
from core.tensor.rng import RngState

__all__ = [
    "DEFAULT_DTYPE",
    "RealMatrix",
    "RngState",
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
