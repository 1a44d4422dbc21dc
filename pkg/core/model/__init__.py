# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

from core.model.branch import BranchKind, BranchNet, branch_backward, branch_forward, branch_from, install_branch
from core.model.config import ModelConfig, default_embed_dim, format_breakdown, layer_breakdown, param_count
from core.model.network import DualBranchNet, ForwardCache, GradientSet, backward, build, forward, predict_batch
from core.model.serialize import load, loads, payload_digest, payload_scalar_count, save

__all__ = [
    "BranchKind",
    "BranchNet",
    "DualBranchNet",
    "ForwardCache",
    "GradientSet",
    "ModelConfig",
    "backward",
    "branch_backward",
    "branch_forward",
    "branch_from",
    "build",
    "default_embed_dim",
    "format_breakdown",
    "forward",
    "install_branch",
    "layer_breakdown",
    "load",
    "loads",
    "param_count",
    "payload_digest",
    "payload_scalar_count",
    "predict_batch",
    "save",
]
