# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Differentiable building blocks, each with an explicit forward and backward."""

from core.layers.activations import sigmoid, swish, swish_backward, swish_grad
from core.layers.concat import concat_cols, split_cols
from core.layers.embedding import (
    OOV_INDEX,
    EmbeddingTable,
    embedding_backward,
    embedding_lookup,
    init_embedding,
)
from core.layers.linear import LinearParams, glorot_bound, init_linear, linear_backward, linear_forward
from core.layers.loss import get_loss, mse

__all__ = [
    "OOV_INDEX",
    "EmbeddingTable",
    "LinearParams",
    "concat_cols",
    "embedding_backward",
    "embedding_lookup",
    "get_loss",
    "glorot_bound",
    "init_embedding",
    "init_linear",
    "linear_backward",
    "linear_forward",
    "mse",
    "sigmoid",
    "split_cols",
    "swish",
    "swish_backward",
    "swish_grad",
]
