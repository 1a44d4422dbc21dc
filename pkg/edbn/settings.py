# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

from __future__ import annotations

from pathlib import Path

from platformdirs import PlatformDirs
from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    log_level: str = "INFO"
    log_to_file: bool = False
    log_dir: str | None = None
    event_log: str | None = Field(default=None, alias="EDBN_EVENT_LOG")
    fast_matmul: bool = False

    # Version-agnostic config for pydantic-settings 2.x
    model_config = {
        "env_prefix": "EDBN_",
        "env_file": ".env",
        "extra": "ignore",
        "populate_by_name": True,
    }

    def dirs(self) -> PlatformDirs:
        return PlatformDirs(appname="edbn", appauthor="edbn")

    def resolve_log_path(self) -> Path:
        base = Path(self.log_dir) if self.log_dir else Path(self.dirs().user_log_path)
        return base / "edbn.log"
