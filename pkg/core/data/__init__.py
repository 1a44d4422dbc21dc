# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

from core.data.batching import Batch, iter_batches, make_batches
from core.data.csvio import load_csv, write_csv, write_predictions
from core.data.dataset import Dataset, SynthTruth, feature_names_for
from core.data.split import time_split
from core.data.synth import SynthSpec, generate_synthetic
from core.data.vocab import Vocab

__all__ = [
    "Batch",
    "Dataset",
    "SynthSpec",
    "SynthTruth",
    "Vocab",
    "feature_names_for",
    "generate_synthetic",
    "iter_batches",
    "load_csv",
    "make_batches",
    "time_split",
    "write_csv",
    "write_predictions",
]
