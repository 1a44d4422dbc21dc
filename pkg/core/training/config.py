# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Training recipe: Adam at 0.001, batch 1024, 100 epochs, linear warm-up,
branch pre-training followed by joint training."""

from __future__ import annotations

from typing import List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

from core.data.dataset import Dataset
from core.errors import ConfigError
from core.model.branch import BranchKind
from core.model.config import DEFAULT_BRANCH_A, DEFAULT_BRANCH_B, DEFAULT_HEAD, ModelConfig
from core.optim import DEFAULT_LR, DEFAULT_WARMUP_STEPS, WarmupSchedule

PretrainMode = Literal["dense", "id", "both", "none"]
DEFAULT_PRETRAIN_SHARE = 0.2


class TrainConfig(BaseModel):
    lr_base: float = Field(default=DEFAULT_LR, gt=0)
    batch_size: int = Field(default=1024, ge=1)
    total_epochs: int = Field(default=100, ge=0)
    warmup_steps: int = Field(default=DEFAULT_WARMUP_STEPS, ge=1)
    pretrain_mode: PretrainMode = "both"
    pretrain_epochs: Optional[int] = Field(default=None, ge=0)
    joint_epochs: Optional[int] = Field(default=None, ge=0)
    val_fraction: float = Field(default=0.2, ge=0.0, lt=1.0)
    seed: int = Field(default=0, ge=0)
    loss: Literal["mse"] = "mse"
    embed_dim: Optional[int] = Field(default=None, ge=1)
    branch_a_widths: List[int] = Field(default_factory=lambda: list(DEFAULT_BRANCH_A))
    branch_b_widths: List[int] = Field(default_factory=lambda: list(DEFAULT_BRANCH_B))
    head_widths: List[int] = Field(default_factory=lambda: list(DEFAULT_HEAD))
    use_id_branch: bool = True
    freeze_pretrained: bool = False
    features_include: Optional[List[str]] = None
    per_time_metric: bool = False
    eval_batch_size: int = Field(default=8192, ge=1)

    model_config = {"extra": "forbid"}

    @model_validator(mode="after")
    def _split_epochs(self) -> "TrainConfig":
        if self.pretrain_mode == "id" and not self.use_id_branch:
            raise ValueError("pretrain_mode 'id' needs the id branch")
        total = self.total_epochs
        if self.pretrain_mode == "none":
            if self.pretrain_epochs:
                raise ValueError("pretrain_epochs must be 0 when pretrain_mode is 'none'")
            self.pretrain_epochs = 0
        elif self.pretrain_epochs is None:
            if self.joint_epochs is not None:
                self.pretrain_epochs = total - self.joint_epochs
            else:
                self.pretrain_epochs = int(round(DEFAULT_PRETRAIN_SHARE * total))
        if self.joint_epochs is None:
            self.joint_epochs = total - self.pretrain_epochs
        if self.pretrain_epochs < 0 or self.joint_epochs < 0 or self.pretrain_epochs + self.joint_epochs != total:
            raise ValueError(
                f"phase epochs must sum to total_epochs={total} "
                f"(pretrain={self.pretrain_epochs}, joint={self.joint_epochs})"
            )
        return self

    @classmethod
    def create(cls, **values) -> "TrainConfig":
        try:
            return cls(**values)
        except ValidationError as exc:
            first = exc.errors()[0]
            where = ".".join(str(part) for part in first.get("loc", ()))
            raise ConfigError(f"invalid train config{' ' + where if where else ''}: {first['msg']}") from exc

    def schedule(self) -> WarmupSchedule:
        return WarmupSchedule(base_lr=self.lr_base, warmup_steps=self.warmup_steps)

    def pretrain_branches(self) -> list[BranchKind]:
        """Branches pre-trained in phase 1, dense first."""
        if self.pretrain_mode == "none":
            return []
        kinds = {
            "dense": [BranchKind.DENSE],
            "id": [BranchKind.ID],
            "both": [BranchKind.DENSE, BranchKind.ID],
        }[self.pretrain_mode]
        return [kind for kind in kinds if kind is BranchKind.DENSE or self.use_id_branch]

    def model_config_for(self, ds: Dataset) -> ModelConfig:
        return ModelConfig.create(
            feature_count=ds.feature_count,
            id_vocab=ds.vocab.size,
            embed_dim=self.embed_dim,
            branch_a_widths=self.branch_a_widths,
            branch_b_widths=self.branch_b_widths,
            head_widths=self.head_widths,
            use_id_branch=self.use_id_branch,
        )


__all__ = ["PretrainMode", "TrainConfig"]
