# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Architecture configuration and parameter accounting."""

from __future__ import annotations

import logging
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from core.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_BRANCH_A = [256, 256, 256]
DEFAULT_BRANCH_B = [64, 64, 64]
DEFAULT_HEAD = [512, 128, 32, 1]
TARGET_COMPRESSION = 20.0
RATIO_ENFORCED_FROM = 160


def default_embed_dim(id_vocab: int) -> int:
    """min(64, max(4, floor((V - 1) / 20)))."""
    return min(64, max(4, (id_vocab - 1) // 20))


class ModelConfig(BaseModel):
    feature_count: int = Field(ge=1)
    id_vocab: int = Field(ge=2)
    embed_dim: Optional[int] = Field(default=None, ge=1)
    branch_a_widths: List[int] = Field(default_factory=lambda: list(DEFAULT_BRANCH_A))
    branch_b_widths: List[int] = Field(default_factory=lambda: list(DEFAULT_BRANCH_B))
    head_widths: List[int] = Field(default_factory=lambda: list(DEFAULT_HEAD))
    use_id_branch: bool = True
    activation: Literal["swish"] = "swish"

    model_config = {"extra": "forbid", "validate_assignment": False}

    @field_validator("branch_a_widths", "branch_b_widths", "head_widths")
    @classmethod
    def _positive_widths(cls, widths: List[int]) -> List[int]:
        if not widths:
            raise ValueError("at least one layer is required")
        if any(w < 1 for w in widths):
            raise ValueError(f"widths must be >= 1, got {widths}")
        return list(widths)

    @model_validator(mode="after")
    def _resolve(self) -> "ModelConfig":
        if self.head_widths[-1] != 1:
            raise ValueError(f"last head width must be 1, got {self.head_widths[-1]}")
        if self.embed_dim is None:
            self.embed_dim = default_embed_dim(self.id_vocab)
        real_ids = self.id_vocab - 1
        if self.use_id_branch and real_ids >= RATIO_ENFORCED_FROM and self.compression_ratio < TARGET_COMPRESSION:
            logger.warning(
                "embedding compression ratio %.2f below %.0f (V-1=%d, d=%d)",
                self.compression_ratio,
                TARGET_COMPRESSION,
                real_ids,
                self.embed_dim,
            )
        return self

    @classmethod
    def create(cls, **values) -> "ModelConfig":
        """Validate ``values``, reporting problems as ``ConfigError``."""
        try:
            return cls(**values)
        except ValidationError as exc:
            raise ConfigError(f"invalid model config: {exc.errors()[0]['msg']}") from exc

    @property
    def compression_ratio(self) -> float:
        return (self.id_vocab - 1) / int(self.embed_dim)

    @property
    def head_input(self) -> int:
        width = self.branch_a_widths[-1]
        if self.use_id_branch:
            width += self.branch_b_widths[-1]
        return width


def _chain(fan_in: int, widths: List[int]) -> list[tuple[int, int]]:
    shapes = []
    for width in widths:
        shapes.append((fan_in, width))
        fan_in = width
    return shapes


def layer_shapes(config: ModelConfig) -> dict[str, list[tuple[int, int]]]:
    """(in, out) per linear layer, grouped by block in serialization order."""
    shapes = {"branch_a": _chain(config.feature_count, config.branch_a_widths)}
    if config.use_id_branch:
        shapes["branch_b"] = _chain(int(config.embed_dim), config.branch_b_widths)
    shapes["head"] = _chain(config.head_input, config.head_widths)
    return shapes


def layer_breakdown(config: ModelConfig) -> list[dict]:
    rows: list[dict] = []
    if config.use_id_branch:
        rows.append(
            {
                "block": "embedding",
                "layer": 0,
                "in": config.id_vocab,
                "out": config.embed_dim,
                "params": config.id_vocab * int(config.embed_dim),
            }
        )
    for block, chain in layer_shapes(config).items():
        for idx, (fan_in, fan_out) in enumerate(chain):
            rows.append(
                {"block": block, "layer": idx, "in": fan_in, "out": fan_out, "params": fan_in * fan_out + fan_out}
            )
    return rows


def param_count(config: ModelConfig) -> int:
    """Σ(in·out + out) over every linear layer, plus V·d for the embedding."""
    return sum(row["params"] for row in layer_breakdown(config))


def format_breakdown(config: ModelConfig) -> str:
    lines = [f"{'block':<10} {'layer':>5} {'in':>6} {'out':>6} {'params':>10}"]
    for row in layer_breakdown(config):
        lines.append(f"{row['block']:<10} {row['layer']:>5} {row['in']:>6} {row['out']:>6} {row['params']:>10,}")
    lines.append(f"{'total':<10} {'':>5} {'':>6} {'':>6} {param_count(config):>10,}")
    return "\n".join(lines)


__all__ = [
    "DEFAULT_BRANCH_A",
    "DEFAULT_BRANCH_B",
    "DEFAULT_HEAD",
    "ModelConfig",
    "default_embed_dim",
    "format_breakdown",
    "layer_breakdown",
    "layer_shapes",
    "param_count",
]
