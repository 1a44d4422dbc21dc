# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

from __future__ import annotations

import sys
from pathlib import Path

import pytest

# Make the in-repo packages importable without installing them
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.tensor import set_deterministic  # noqa: E402


@pytest.fixture
def fast_matmul():
    """BLAS products for the long statistical runs; restores the fixed-order kernel."""
    set_deterministic(False)
    yield
    set_deterministic(True)


@pytest.fixture(autouse=True)
def _no_event_log(monkeypatch):
    monkeypatch.delenv("EDBN_EVENT_LOG", raising=False)
