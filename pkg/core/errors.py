# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Exception hierarchy shared by every edbn module.

Each class carries a snake_case ``code`` and the exit status the CLI reports
for it (1 usage/config, 2 data/schema, 3 runtime/numeric).
"""

from __future__ import annotations

from typing import Sequence


class EdbnError(Exception):
    code = "edbn_error"
    exit_code = 3

    def __init__(self, message: str | None = None):
        super().__init__(message or self.code)


class ShapeError(EdbnError, ValueError):
    code = "shape_mismatch"

    def __init__(self, op: str, *shapes: Sequence[int] | int, detail: str | None = None):
        rendered = " vs ".join(str(tuple(s)) if not isinstance(s, int) else str(s) for s in shapes)
        msg = f"{op}: shape mismatch {rendered}"
        if detail:
            msg = f"{msg} ({detail})"
        super().__init__(msg)
        self.op = op
        self.shapes = shapes


class ArgumentError(EdbnError, ValueError):
    code = "bad_argument"


class VocabIndexError(EdbnError, IndexError):
    code = "index_out_of_range"


class UsageError(EdbnError):
    code = "usage_error"


class ConfigError(EdbnError, ValueError):
    code = "bad_config"
    exit_code = 1


class SchemaError(EdbnError):
    code = "bad_schema"
    exit_code = 2

    def __init__(self, message: str, *, column: str | None = None, row: int | None = None):
        super().__init__(message)
        self.column = column
        self.row = row


class UndefinedCorrelation(EdbnError, ArithmeticError):
    code = "undefined_correlation"


class ModelFileError(EdbnError):
    code = "bad_model_file"
    exit_code = 2


class NotAModelFile(ModelFileError):
    code = "not_a_model_file"

    def __init__(self, path: str | None = None):
        super().__init__(f"not a model file: {path}" if path else "not a model file")


class UnsupportedModelVersion(ModelFileError):
    code = "unsupported_version"

    def __init__(self, version: int, supported: int):
        super().__init__(f"unsupported version {version} (this build reads up to {supported})")
        self.version = version


class TruncatedModelFile(ModelFileError):
    code = "truncated_payload"


__all__ = [
    "ArgumentError",
    "ConfigError",
    "EdbnError",
    "ModelFileError",
    "NotAModelFile",
    "SchemaError",
    "ShapeError",
    "TruncatedModelFile",
    "UndefinedCorrelation",
    "UnsupportedModelVersion",
    "UsageError",
    "VocabIndexError",
]
