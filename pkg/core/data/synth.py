# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Seeded synthetic market panel.

    target = wᵀf + α[id] + nonlinearity · tanh(f_0 · f_1) + ε

f ~ N(0, I), w ~ N(0, weight_scale² / F), α_k ~ N(0, id_std²),
ε ~ N(0, noise_std²). Rows are laid out in time blocks: block t holds one row
per investment id, so every time_id sees the same id universe.
"""

from __future__ import annotations

import logging

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from core.data.dataset import Dataset, SynthTruth, feature_names_for
from core.data.vocab import Vocab
from core.errors import ConfigError
from core.tensor import RngState, seeded_normal
from core.unilog import write as uni_write

logger = logging.getLogger(__name__)


class SynthSpec(BaseModel):
    rows: int = Field(default=2000, ge=1)
    ids: int = Field(default=100, ge=1)
    features: int = Field(default=30, ge=1)
    weight_scale: float = Field(default=1.0, ge=0)
    id_std: float = Field(default=1.0, ge=0)
    nonlinearity: float = Field(default=0.5, ge=0)
    noise_std: float = Field(default=0.5, ge=0)
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _enough_rows(self) -> "SynthSpec":
        if self.rows < self.ids:
            raise ValueError(f"rows ({self.rows}) must be >= ids ({self.ids}) so every id appears")
        return self

    @classmethod
    def create(cls, **values) -> "SynthSpec":
        try:
            return cls(**values)
        except ValidationError as exc:
            raise ConfigError(f"invalid synthetic spec: {exc.errors()[0]['msg']}") from exc


def generate_synthetic(spec: SynthSpec) -> Dataset:
    root = RngState(spec.seed)
    n, k, f = spec.rows, spec.ids, spec.features

    raw_ids = np.sort(root.child("ids").generator.choice(10 * k, size=k, replace=False)) + 1
    weights = seeded_normal(root.child("weights"), 0.0, spec.weight_scale / np.sqrt(f), 1, f).reshape(-1)
    effects = seeded_normal(root.child("effects"), 0.0, spec.id_std, 1, k).reshape(-1)
    features = seeded_normal(root.child("features"), 0.0, 1.0, n, f, dtype=np.float32)
    noise = seeded_normal(root.child("noise"), 0.0, spec.noise_std, 1, n).reshape(-1)

    slot = np.arange(n) % k
    time_id = np.arange(n) // k
    investment_id = raw_ids[slot]

    truth = SynthTruth(
        weights=weights,
        id_effects={int(raw): float(alpha) for raw, alpha in zip(raw_ids, effects)},
        nonlinearity=spec.nonlinearity,
        noise_std=spec.noise_std,
    )
    wide = features.astype(np.float64)
    interaction = np.tanh(wide[:, 0] * wide[:, 1 % f])
    target = truth.linear_part(features) + effects[slot] + spec.nonlinearity * interaction + noise

    ds = Dataset(
        time_id=time_id,
        investment_id=investment_id,
        target=target,
        features=features,
        feature_names=feature_names_for(f),
        vocab=Vocab.from_ids(investment_id),
        truth=truth,
    )
    logger.info("generated synthetic panel: %d rows, %d ids, %d features, seed %d", n, k, f, spec.seed)
    uni_write("data.generated", None, **spec.model_dump())
    return ds


__all__ = ["SynthSpec", "generate_synthetic"]
