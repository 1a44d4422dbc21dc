# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Linear warm-up learning-rate schedule."""

from __future__ import annotations

from pydantic import BaseModel, Field

from core.errors import ArgumentError

DEFAULT_LR = 0.001
DEFAULT_WARMUP_STEPS = 1000


class WarmupSchedule(BaseModel):
    base_lr: float = Field(default=DEFAULT_LR, gt=0)
    warmup_steps: int = Field(default=DEFAULT_WARMUP_STEPS, ge=1)

    model_config = {"frozen": True}


def warmup_lr(t: int, s: WarmupSchedule) -> float:
    """base_lr · min(1, t / W) for step ``t`` counted from 1."""
    if t < 1:
        raise ArgumentError(f"warmup_lr: step must be >= 1, got {t}")
    if t >= s.warmup_steps:
        return s.base_lr
    return s.base_lr * (t / s.warmup_steps)


__all__ = ["DEFAULT_LR", "DEFAULT_WARMUP_STEPS", "WarmupSchedule", "warmup_lr"]
