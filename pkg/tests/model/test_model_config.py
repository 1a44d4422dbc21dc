# SPDX-License-Identifier: AGPL-3.0-or-later
from __future__ import annotations

import logging

import pytest

from core.errors import ConfigError
from core.model import ModelConfig, default_embed_dim, format_breakdown, layer_breakdown, param_count

REFERENCE = dict(feature_count=300, id_vocab=1000, embed_dim=50)


def test_reference_param_count():
    assert param_count(ModelConfig(**REFERENCE)) == 504_401


def test_breakdown_blocks_sum_to_total():
    rows = layer_breakdown(ModelConfig(**REFERENCE))
    per_block = {}
    for row in rows:
        per_block[row["block"]] = per_block.get(row["block"], 0) + row["params"]
    assert per_block == {"embedding": 50_000, "branch_a": 208_640, "branch_b": 11_584, "head": 234_177}
    widths = [row["out"] for row in rows if row["block"] != "embedding"]
    assert widths == [256, 256, 256, 64, 64, 64, 512, 128, 32, 1]


def test_param_count_grows_with_vocab_by_embed_dim():
    base = param_count(ModelConfig(**REFERENCE))
    bigger = param_count(ModelConfig(**{**REFERENCE, "id_vocab": 1037}))
    assert bigger - base == 37 * 50


def test_format_breakdown_lists_total():
    text = format_breakdown(ModelConfig(**REFERENCE))
    assert "504,401" in text.splitlines()[-1]
    assert "head" in text


@pytest.mark.parametrize("ids", [160, 500, 1000, 5000])
def test_default_embed_dim_keeps_compression_ratio(ids):
    cfg = ModelConfig(feature_count=10, id_vocab=ids + 1)
    assert cfg.embed_dim == default_embed_dim(ids + 1)
    assert cfg.compression_ratio >= 20


def test_default_embed_dim_floor_and_cap():
    assert default_embed_dim(2) == 4
    assert default_embed_dim(100_001) == 64


def test_low_compression_ratio_warns(caplog):
    with caplog.at_level(logging.WARNING, logger="core.model.config"):
        ModelConfig(feature_count=4, id_vocab=201, embed_dim=32)
    assert "compression ratio" in caplog.text


@pytest.mark.parametrize(
    "values",
    [
        dict(feature_count=0, id_vocab=5),
        dict(feature_count=3, id_vocab=1),
        dict(feature_count=3, id_vocab=5, head_widths=[8, 2]),
        dict(feature_count=3, id_vocab=5, branch_a_widths=[]),
        dict(feature_count=3, id_vocab=5, branch_b_widths=[4, 0]),
        dict(feature_count=3, id_vocab=5, dropout=0.1),
    ],
)
def test_invalid_configs_raise_config_error(values):
    with pytest.raises(ConfigError):
        ModelConfig.create(**values)
