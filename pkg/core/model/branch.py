# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Single-branch models used for staged pre-training.

A branch net is one tower of a DualBranchNet plus a temporary linear head
(branch width → 1). After pre-training the head is discarded and the tower
(and, for the id branch, the embedding) is copied back into the full net.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional

import numpy as np

from core.errors import ShapeError, UsageError
from core.layers import (
    EmbeddingTable,
    LinearParams,
    embedding_backward,
    embedding_lookup,
    init_linear,
    linear_backward,
    linear_forward,
)
from core.model.network import DualBranchNet, GradientSet, TowerCache, tower_backward, tower_forward
from core.tensor import RealMatrix, RngState, as_matrix


class BranchKind(str, Enum):
    DENSE = "dense"
    ID = "id"


@dataclass
class BranchCache:
    owner: int
    revision: int
    batch_size: int
    ids: Optional[np.ndarray]
    tower: TowerCache
    head_input: RealMatrix


@dataclass
class BranchNet:
    kind: BranchKind
    layers: List[LinearParams]
    temp_head: LinearParams
    embedding: Optional[EmbeddingTable] = None
    revision: int = 0

    @property
    def dtype(self) -> np.dtype:
        return self.layers[0].weight.dtype

    @property
    def prefix(self) -> str:
        return "branch_a" if self.kind is BranchKind.DENSE else "branch_b"

    def parameters(self) -> Dict[str, np.ndarray]:
        params: Dict[str, np.ndarray] = {}
        if self.embedding is not None:
            params["embedding"] = self.embedding.table
        for idx, layer in enumerate(self.layers):
            params[f"{self.prefix}.{idx}.weight"] = layer.weight
            params[f"{self.prefix}.{idx}.bias"] = layer.bias
        params["temp_head.weight"] = self.temp_head.weight
        params["temp_head.bias"] = self.temp_head.bias
        return params

    def branch_parameters(self) -> Dict[str, np.ndarray]:
        """Parameters that survive into the joint net (temporary head excluded)."""
        return {name: arr for name, arr in self.parameters().items() if not name.startswith("temp_head")}

    def touch(self) -> None:
        self.revision += 1


def branch_from(net: DualBranchNet, kind: BranchKind, rng: RngState) -> BranchNet:
    """Copy one tower out of ``net`` and attach a freshly drawn temporary head."""
    kind = BranchKind(kind)
    if kind is BranchKind.DENSE:
        layers = [layer.copy() for layer in net.branch_a]
        embedding = None
    else:
        if not net.config.use_id_branch:
            raise UsageError("id branch pre-training needs a net with the id branch enabled")
        layers = [layer.copy() for layer in net.branch_b]
        embedding = net.embedding.copy()
    head = init_linear(rng, layers[-1].out_features, 1, dtype=net.dtype)
    return BranchNet(kind=kind, layers=layers, temp_head=head, embedding=embedding)


def install_branch(net: DualBranchNet, branch: BranchNet) -> None:
    """Write a pre-trained tower (and embedding) back into ``net`` in place."""
    target = net.branch_a if branch.kind is BranchKind.DENSE else net.branch_b
    for dst, src in zip(target, branch.layers):
        np.copyto(dst.weight, src.weight)
        np.copyto(dst.bias, src.bias)
    if branch.embedding is not None:
        np.copyto(net.embedding.table, branch.embedding.table)
    net.touch()


def branch_forward(
    branch: BranchNet, features: RealMatrix, ids: Optional[np.ndarray]
) -> tuple[RealMatrix, BranchCache]:
    if branch.kind is BranchKind.DENSE:
        x = as_matrix(features, dtype=branch.dtype)
        if x.shape[1] != branch.layers[0].in_features:
            raise ShapeError("branch_forward", x.shape, branch.layers[0].weight.shape)
        batch_ids = None
    else:
        batch_ids = np.asarray(ids)
        x = embedding_lookup(batch_ids, branch.embedding)
    h, tower = tower_forward(x, branch.layers, linear_last=False)
    pred = linear_forward(h, branch.temp_head)
    cache = BranchCache(
        owner=id(branch),
        revision=branch.revision,
        batch_size=x.shape[0],
        ids=batch_ids,
        tower=tower,
        head_input=h,
    )
    return pred, cache


def branch_backward(branch: BranchNet, cache: BranchCache, d_pred: np.ndarray) -> GradientSet:
    if cache.owner != id(branch) or cache.revision != branch.revision:
        raise UsageError("branch_backward: forward cache does not belong to this branch state")
    d_pred = np.asarray(d_pred).reshape(cache.batch_size, 1).astype(branch.dtype, copy=False)
    d_h, d_w, d_b = linear_backward(cache.head_input, branch.temp_head, d_pred)
    d_x, tower_grads = tower_backward(branch.layers, cache.tower, d_h, linear_last=False)
    grads: GradientSet = {}
    if branch.embedding is not None:
        grads["embedding"] = embedding_backward(cache.ids, d_x, branch.embedding.vocab_size)
    for idx, (gw, gb) in enumerate(tower_grads):
        grads[f"{branch.prefix}.{idx}.weight"] = gw
        grads[f"{branch.prefix}.{idx}.bias"] = gb
    grads["temp_head.weight"] = d_w
    grads["temp_head.bias"] = d_b
    return grads


__all__ = [
    "BranchCache",
    "BranchKind",
    "BranchNet",
    "branch_backward",
    "branch_forward",
    "branch_from",
    "install_branch",
]
