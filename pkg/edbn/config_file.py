# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Plain-text run configuration: ``key=value`` per line, ``#`` comments.

Keys are TrainConfig field names or their CLI flag spellings (dashes or
underscores). List-valued keys take comma-separated values.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict

from core.errors import ConfigError
from core.training import TrainConfig

# CLI spellings that differ from the TrainConfig field name
ALIASES = {
    "lr": "lr_base",
    "epochs": "total_epochs",
    "pretrain": "pretrain_mode",
    "val_frac": "val_fraction",
    "per_time": "per_time_metric",
}
LIST_FIELDS = {"branch_a_widths", "branch_b_widths", "head_widths", "features_include"}
_INVERTED = {"dense_only": "use_id_branch"}


def canonical_key(key: str) -> str:
    key = key.strip().replace("-", "_")
    return ALIASES.get(key, key)


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        field = canonical_key(key)
        if field in _INVERTED:
            values[_INVERTED[field]] = value.lower() not in ("1", "true", "yes", "on")
            continue
        if field not in TrainConfig.model_fields:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if field in LIST_FIELDS:
            values[field] = [item.strip() for item in value.split(",") if item.strip()]
        else:
            values[field] = value
    return values


def load_config_file(path: str | Path) -> Dict[str, Any]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    return parse_config_text(text, source=str(path))


__all__ = ["ALIASES", "canonical_key", "load_config_file", "parse_config_text"]
