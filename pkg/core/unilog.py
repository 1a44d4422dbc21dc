# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Structured JSONL event records.

Events go to the file named by ``EDBN_EVENT_LOG``; without it ``write`` is a
no-op, so nothing lands outside the paths a caller declared.
"""

from __future__ import annotations

import json
import os
import pathlib
import time
from typing import Any

ENV_VAR = "EDBN_EVENT_LOG"


def _log_path() -> pathlib.Path | None:
    path_value = os.getenv(ENV_VAR)
    if not path_value:
        return None
    path = pathlib.Path(path_value)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write(event: str, run_id: str | None = None, **fields: Any) -> None:
    path = _log_path()
    if path is None:
        return
    record = {
        "ts": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "event": event,
        "run_id": run_id,
        **fields,
    }
    with path.open("a", encoding="utf-8") as handle:
        handle.write(json.dumps(record, ensure_ascii=False, default=str) + "\n")
