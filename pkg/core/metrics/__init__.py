# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

from core.metrics.metric import MetricReport, metric_report, mse_metric, pearson, per_time_pearson

__all__ = ["MetricReport", "metric_report", "mse_metric", "pearson", "per_time_pearson"]
