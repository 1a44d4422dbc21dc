# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

from core.optim.adam import AdamState, adam_step
from core.optim.schedule import DEFAULT_LR, DEFAULT_WARMUP_STEPS, WarmupSchedule, warmup_lr

__all__ = ["DEFAULT_LR", "DEFAULT_WARMUP_STEPS", "AdamState", "WarmupSchedule", "adam_step", "warmup_lr"]
