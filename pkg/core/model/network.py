# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Dual-branch network: dense-feature tower, id-embedding tower, shared head.

    features ─► A: F→256→256→256 ─┐
                                   ├─ concat ─► head: 320→512→128→32→1
    ids ─► embed(d) ─► B: d→64→64→64 ┘

Swish follows every hidden linear layer (branch outputs included); the final
1-unit layer is linear and the raw concatenation is not activated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from core.data.vocab import Vocab
from core.errors import ConfigError, ShapeError, UsageError
from core.layers import (
    EmbeddingTable,
    LinearParams,
    concat_cols,
    embedding_backward,
    embedding_lookup,
    init_embedding,
    init_linear,
    linear_backward,
    linear_forward,
    split_cols,
    swish,
    swish_grad,
)
from core.model.config import ModelConfig, layer_shapes
from core.tensor import RealMatrix, RngState, as_matrix

GradientSet = Dict[str, np.ndarray]


@dataclass
class TowerCache:
    inputs: List[RealMatrix]
    pre: List[RealMatrix]


def tower_forward(x: RealMatrix, layers: List[LinearParams], linear_last: bool) -> tuple[RealMatrix, TowerCache]:
    cache = TowerCache(inputs=[], pre=[])
    h = x
    for idx, layer in enumerate(layers):
        cache.inputs.append(h)
        z = linear_forward(h, layer)
        cache.pre.append(z)
        h = z if (linear_last and idx == len(layers) - 1) else swish(z)
    return h, cache


def tower_backward(
    layers: List[LinearParams], cache: TowerCache, d_out: RealMatrix, linear_last: bool
) -> tuple[RealMatrix, list[tuple[RealMatrix, np.ndarray]]]:
    grads: list[tuple[RealMatrix, np.ndarray]] = [None] * len(layers)  # type: ignore[list-item]
    d_h = d_out
    for idx in range(len(layers) - 1, -1, -1):
        z = cache.pre[idx]
        d_z = d_h if (linear_last and idx == len(layers) - 1) else d_h * swish_grad(z)
        d_h, d_w, d_b = linear_backward(cache.inputs[idx], layers[idx], d_z)
        grads[idx] = (d_w, d_b)
    return d_h, grads


def _tower_params(prefix: str, layers: List[LinearParams], out: Dict[str, np.ndarray]) -> None:
    for idx, layer in enumerate(layers):
        out[f"{prefix}.{idx}.weight"] = layer.weight
        out[f"{prefix}.{idx}.bias"] = layer.bias


def _tower_grads(prefix: str, grads: list[tuple[RealMatrix, np.ndarray]], out: GradientSet) -> None:
    for idx, (d_w, d_b) in enumerate(grads):
        out[f"{prefix}.{idx}.weight"] = d_w
        out[f"{prefix}.{idx}.bias"] = d_b


def _check_d_pred(d_pred: np.ndarray, batch: int) -> RealMatrix:
    d_pred = np.asarray(d_pred)
    if d_pred.size != batch:
        raise ShapeError("backward", d_pred.shape, (batch, 1))
    return d_pred.reshape(batch, 1)


@dataclass
class ForwardCache:
    owner: int
    revision: int
    batch_size: int
    ids: Optional[np.ndarray]
    tower_a: TowerCache
    tower_b: Optional[TowerCache]
    head: TowerCache
    split: int


@dataclass
class DualBranchNet:
    config: ModelConfig
    embedding: Optional[EmbeddingTable]
    branch_a: List[LinearParams]
    branch_b: List[LinearParams]
    head: List[LinearParams]
    vocab: Optional[Vocab] = None
    feature_names: Optional[List[str]] = None
    revision: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        expected = layer_shapes(self.config)
        for block in ("branch_a", "branch_b", "head"):
            layers = getattr(self, block)
            got = [(layer.in_features, layer.out_features) for layer in layers]
            if got != expected.get(block, []):
                raise ShapeError(f"DualBranchNet.{block}", got, expected.get(block, []))
        if self.config.use_id_branch:
            if self.embedding is None:
                raise ConfigError("id branch enabled but no embedding table given")
            if (self.embedding.vocab_size, self.embedding.dim) != (self.config.id_vocab, self.config.embed_dim):
                raise ShapeError(
                    "DualBranchNet.embedding",
                    self.embedding.table.shape,
                    (self.config.id_vocab, self.config.embed_dim),
                )

    @property
    def dtype(self) -> np.dtype:
        return self.branch_a[0].weight.dtype

    def parameters(self) -> Dict[str, np.ndarray]:
        """Every learnable array, keyed by name, in serialization order.

        Values are the live arrays; in-place updates change the net.
        """
        params: Dict[str, np.ndarray] = {}
        if self.embedding is not None:
            params["embedding"] = self.embedding.table
        _tower_params("branch_a", self.branch_a, params)
        _tower_params("branch_b", self.branch_b, params)
        _tower_params("head", self.head, params)
        return params

    def touch(self) -> None:
        """Mark parameters as updated; outstanding forward caches become stale."""
        self.revision += 1

    def astype(self, dtype: Any) -> "DualBranchNet":
        return DualBranchNet(
            config=self.config.model_copy(),
            embedding=self.embedding.astype(dtype) if self.embedding is not None else None,
            branch_a=[layer.astype(dtype) for layer in self.branch_a],
            branch_b=[layer.astype(dtype) for layer in self.branch_b],
            head=[layer.astype(dtype) for layer in self.head],
            vocab=self.vocab,
            feature_names=list(self.feature_names) if self.feature_names else None,
        )

    def copy(self) -> "DualBranchNet":
        return self.astype(self.dtype)


def build(config: ModelConfig, rng: RngState, dtype: Any = np.float32) -> DualBranchNet:
    """Fresh parameters, fully determined by ``rng``.

    Draw order: embedding, branch A, branch B, head.
    """
    shapes = layer_shapes(config)
    embedding = None
    if config.use_id_branch:
        embedding = init_embedding(rng, config.id_vocab, int(config.embed_dim), dtype=dtype)
    towers = {
        block: [init_linear(rng, fan_in, fan_out, dtype=dtype) for fan_in, fan_out in shapes.get(block, [])]
        for block in ("branch_a", "branch_b", "head")
    }
    return DualBranchNet(
        config=config,
        embedding=embedding,
        branch_a=towers["branch_a"],
        branch_b=towers["branch_b"],
        head=towers["head"],
    )


def forward(net: DualBranchNet, features: RealMatrix, ids: Optional[np.ndarray]) -> tuple[RealMatrix, ForwardCache]:
    x = as_matrix(features, dtype=net.dtype)
    if x.shape[1] != net.config.feature_count:
        raise ShapeError("forward", x.shape, (x.shape[0], net.config.feature_count))
    out_a, cache_a = tower_forward(x, net.branch_a, linear_last=False)
    cache_b = None
    if net.config.use_id_branch:
        if ids is None:
            raise UsageError("forward: ids are required when the id branch is enabled")
        ids = np.asarray(ids)
        if ids.shape != (x.shape[0],):
            raise ShapeError("forward", ids.shape, (x.shape[0],))
        emb = embedding_lookup(ids, net.embedding)
        out_b, cache_b = tower_forward(emb, net.branch_b, linear_last=False)
        joined = concat_cols(out_a, out_b)
    else:
        joined = out_a
    pred, cache_head = tower_forward(joined, net.head, linear_last=True)
    cache = ForwardCache(
        owner=id(net),
        revision=net.revision,
        batch_size=x.shape[0],
        ids=ids if net.config.use_id_branch else None,
        tower_a=cache_a,
        tower_b=cache_b,
        head=cache_head,
        split=out_a.shape[1],
    )
    return pred, cache


def backward(net: DualBranchNet, cache: ForwardCache, d_pred: np.ndarray) -> GradientSet:
    if cache.owner != id(net) or cache.revision != net.revision:
        raise UsageError("backward: forward cache does not belong to this net state")
    d_pred = _check_d_pred(d_pred, cache.batch_size).astype(net.dtype, copy=False)
    d_joined, head_grads = tower_backward(net.head, cache.head, d_pred, linear_last=True)

    grads: GradientSet = {}
    if net.config.use_id_branch:
        d_a, d_b = split_cols(d_joined, cache.split)
        _, a_grads = tower_backward(net.branch_a, cache.tower_a, d_a, linear_last=False)
        d_emb, b_grads = tower_backward(net.branch_b, cache.tower_b, d_b, linear_last=False)
        grads["embedding"] = embedding_backward(cache.ids, d_emb, net.config.id_vocab)
        _tower_grads("branch_a", a_grads, grads)
        _tower_grads("branch_b", b_grads, grads)
    else:
        _, a_grads = tower_backward(net.branch_a, cache.tower_a, d_joined, linear_last=False)
        _tower_grads("branch_a", a_grads, grads)
    _tower_grads("head", head_grads, grads)
    return grads


def predict_batch(net: DualBranchNet, features: RealMatrix, ids: Optional[np.ndarray]) -> np.ndarray:
    pred, _ = forward(net, features, ids)
    return pred.reshape(-1)


__all__ = [
    "DualBranchNet",
    "ForwardCache",
    "GradientSet",
    "TowerCache",
    "backward",
    "build",
    "forward",
    "predict_batch",
    "tower_backward",
    "tower_forward",
]
