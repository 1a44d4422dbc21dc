# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

from __future__ import annotations

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

LOGGER_NAMES = ("core", "edbn")
_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"


class _StderrHandler(logging.StreamHandler):
    """Writes to whatever ``sys.stderr`` is at emit time."""

    def __init__(self) -> None:
        logging.Handler.__init__(self)

    @property
    def stream(self):  # type: ignore[override]
        return sys.stderr


def _stderr_handler(logger: logging.Logger) -> logging.Handler:
    for handler in logger.handlers:
        if isinstance(handler, _StderrHandler):
            return handler
    handler = _StderrHandler()
    handler.setFormatter(logging.Formatter(_FORMAT))
    logger.addHandler(handler)
    return handler


def setup_logging(level: str = "INFO", log_path: Path | None = None) -> logging.Logger:
    """Progress logging to stderr, plus a rotating file when ``log_path`` is given."""
    for name in LOGGER_NAMES:
        logger = logging.getLogger(name)
        logger.setLevel(getattr(logging, str(level).upper(), logging.INFO))
        _stderr_handler(logger)
        if log_path is not None and not any(isinstance(h, RotatingFileHandler) for h in logger.handlers):
            log_path.parent.mkdir(parents=True, exist_ok=True)
            handler = RotatingFileHandler(log_path, maxBytes=5_000_000, backupCount=3, encoding="utf-8")
            handler.setFormatter(logging.Formatter(_FORMAT))
            logger.addHandler(handler)
    return logging.getLogger("edbn")
