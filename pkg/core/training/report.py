# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

from __future__ import annotations

import csv
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field

REPORT_COLUMNS = ("phase", "epoch", "train_loss", "val_pearson", "val_mse", "lr")


class EpochRecord(BaseModel):
    phase: str
    epoch: int
    train_loss: float
    val_pearson: Optional[float] = None
    val_mse: Optional[float] = None
    lr: float


class LrPoint(BaseModel):
    phase: str
    step: int
    lr: float


class TrainReport(BaseModel):
    epochs: List[EpochRecord] = Field(default_factory=list)
    lr_trace: List[LrPoint] = Field(default_factory=list)
    wall_time_s: float = 0.0
    checksum: str = ""
    param_count: int = 0

    def phase_records(self, phase: str) -> List[EpochRecord]:
        return [rec for rec in self.epochs if rec.phase == phase]

    @property
    def final(self) -> Optional[EpochRecord]:
        return self.epochs[-1] if self.epochs else None

    def write_csv(self, path: str | Path) -> Path:
        """One row per epoch; wall time and checksum are not part of the log."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(REPORT_COLUMNS)
            for rec in self.epochs:
                writer.writerow(
                    [
                        rec.phase,
                        rec.epoch,
                        repr(rec.train_loss),
                        "" if rec.val_pearson is None else repr(rec.val_pearson),
                        "" if rec.val_mse is None else repr(rec.val_mse),
                        repr(rec.lr),
                    ]
                )
        return path


__all__ = ["EpochRecord", "LrPoint", "REPORT_COLUMNS", "TrainReport"]
