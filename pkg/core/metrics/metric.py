# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Evaluation metrics, computed in 64-bit."""

from __future__ import annotations

import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field

from core.errors import ArgumentError, ShapeError, UndefinedCorrelation


class MetricReport(BaseModel):
    pearson: float = Field(ge=-1.0, le=1.0)
    mse: float = Field(ge=0.0)
    n: int = Field(ge=2)
    per_time_pearson: Optional[float] = None
    time_groups: Optional[int] = None

    def as_pairs(self) -> list[tuple[str, str]]:
        pairs = [("pearson", repr(self.pearson)), ("mse", repr(self.mse)), ("n", str(self.n))]
        if self.per_time_pearson is not None:
            pairs.append(("per_time_pearson", repr(self.per_time_pearson)))
            pairs.append(("time_groups", str(self.time_groups)))
        return pairs


def _vectors(x, y, op: str) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(x, dtype=np.float64).reshape(-1)
    b = np.asarray(y, dtype=np.float64).reshape(-1)
    if a.shape != b.shape:
        raise ShapeError(op, a.shape, b.shape)
    return a, b


def pearson(x, y) -> float:
    """ρ = Σ(x-μx)(y-μy) / (√Σ(x-μx)² · √Σ(y-μy)²), clamped to [-1, 1]."""
    a, b = _vectors(x, y, "pearson")
    if a.shape[0] < 2:
        raise ArgumentError(f"pearson: need at least 2 values, got {a.shape[0]}")
    # constancy is judged on the raw values; centering a constant leaves rounding residue
    for which, vec in (("x", a), ("y", b)):
        if np.all(vec == vec[0]):
            raise UndefinedCorrelation(f"undefined correlation: {which} has zero variance")
    da = a - a.mean()
    db = b - b.mean()
    sxx = float(np.dot(da, da))
    syy = float(np.dot(db, db))
    if sxx == 0.0 or syy == 0.0:
        which = "x" if sxx == 0.0 else "y"
        raise UndefinedCorrelation(f"undefined correlation: {which} has zero variance")
    rho = float(np.dot(da, db)) / (math.sqrt(sxx) * math.sqrt(syy))
    return min(1.0, max(-1.0, rho))


def mse_metric(x, y) -> float:
    a, b = _vectors(x, y, "mse_metric")
    if a.shape[0] < 1:
        raise ArgumentError("mse_metric: empty input")
    diff = a - b
    return float(np.dot(diff, diff) / diff.shape[0])


def per_time_pearson(x, y, time_ids) -> tuple[float, int]:
    """Mean of per-time_id coefficients over groups where one is defined.

    Groups with fewer than 2 rows or zero variance are skipped. Returns the
    mean and the number of groups it covers.
    """
    a, b = _vectors(x, y, "per_time_pearson")
    times = np.asarray(time_ids).reshape(-1)
    if times.shape != a.shape:
        raise ShapeError("per_time_pearson", times.shape, a.shape)
    order = np.argsort(times, kind="stable")
    sorted_times = times[order]
    bounds = np.flatnonzero(np.diff(sorted_times)) + 1
    values: list[float] = []
    for group in np.split(order, bounds):
        if group.shape[0] < 2:
            continue
        try:
            values.append(pearson(a[group], b[group]))
        except UndefinedCorrelation:
            continue
    if not values:
        raise UndefinedCorrelation("undefined correlation: no time group has a defined coefficient")
    return float(np.mean(values)), len(values)


def metric_report(pred, target, time_ids=None, *, per_time: bool = False) -> MetricReport:
    p, t = _vectors(pred, target, "metric_report")
    report = MetricReport(pearson=pearson(p, t), mse=mse_metric(p, t), n=int(p.shape[0]))
    if per_time:
        if time_ids is None:
            raise ArgumentError("per-time pearson needs time ids")
        report.per_time_pearson, report.time_groups = per_time_pearson(p, t, time_ids)
    return report


__all__ = ["MetricReport", "metric_report", "mse_metric", "pearson", "per_time_pearson"]
