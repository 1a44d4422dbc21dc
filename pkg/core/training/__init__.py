# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

from core.training.config import TrainConfig
from core.training.report import EpochRecord, LrPoint, TrainReport
from core.training.trainer import JOINT_PHASE, evaluate, fit, phase_label, predict, pretrain_branch, train

__all__ = [
    "JOINT_PHASE",
    "EpochRecord",
    "LrPoint",
    "TrainConfig",
    "TrainReport",
    "evaluate",
    "fit",
    "phase_label",
    "predict",
    "pretrain_branch",
    "train",
]
