# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""CSV ingestion and export for the market panel schema.

Header: ``row_id,time_id,investment_id,target,f_0,...,f_{F-1}``. ``row_id``
("time_investment") is carried through untouched. Missing or unparseable
cells are an error unless zero-imputation is requested.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from core.data.dataset import Dataset, feature_names_for
from core.data.vocab import Vocab
from core.errors import SchemaError
from core.unilog import write as uni_write

logger = logging.getLogger(__name__)

ID_COLUMNS = ("row_id", "time_id", "investment_id")
TARGET_COLUMN = "target"
_FEATURE_RE = re.compile(r"^f_(\d+)$")


def _feature_columns(columns: Sequence[str], expected: Optional[int]) -> list[str]:
    indices = {}
    for name in columns:
        match = _FEATURE_RE.match(name)
        if match:
            indices[int(match.group(1))] = name
    if expected is None:
        if not indices:
            raise SchemaError("no feature columns (f_0, f_1, ...) in header", column="f_0")
        expected = max(indices) + 1
    names = feature_names_for(expected)
    for name in names:
        if name not in columns:
            raise SchemaError(f"missing column {name}", column=name)
    extra = sorted(idx for idx in indices if idx >= expected)
    if extra:
        raise SchemaError(
            f"feature-count mismatch: expected {expected} features, found column f_{extra[0]}",
            column=f"f_{extra[0]}",
        )
    return list(names)


def _numeric(frame: pd.DataFrame, column: str, *, impute: bool, integral: bool) -> np.ndarray:
    raw = frame[column]
    values = pd.to_numeric(raw, errors="coerce")
    bad = values.isna().to_numpy()
    if bad.any() and not impute:
        blank = raw.isna().to_numpy() | raw.astype(str).str.strip().eq("").to_numpy()
        unparseable = bad & ~blank
        kind = "unparseable value" if unparseable.any() else "missing value"
        row = int(np.flatnonzero(unparseable if unparseable.any() else bad)[0])
        raise SchemaError(
            f"{kind} {raw.iloc[row]!r} at row {row + 1}, column {column}", column=column, row=row + 1
        )
    if bad.any():
        values = values.fillna(0.0)
    arr = values.to_numpy(dtype=np.float64)
    if integral:
        fractional = np.mod(arr, 1) != 0
        if fractional.any():
            row = int(np.flatnonzero(fractional)[0])
            raise SchemaError(f"non-integer id {arr[row]!r} at row {row + 1}, column {column}", column=column, row=row + 1)
        return arr.astype(np.int64)
    return arr


def load_csv(
    path: str | Path,
    expected_feature_count: Optional[int] = None,
    *,
    features_include: Optional[Sequence[str]] = None,
    impute_missing: bool = False,
    require_target: bool = True,
) -> Dataset:
    """Parse a market CSV into a Dataset with a vocabulary over its ids."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such data file: {path}")
    try:
        frame = pd.read_csv(path, encoding="utf-8", float_precision="round_trip", low_memory=False)
    except pd.errors.EmptyDataError as exc:
        raise SchemaError(f"{path}: empty file, header row required") from exc
    columns = [str(c) for c in frame.columns]

    required = list(ID_COLUMNS) + ([TARGET_COLUMN] if require_target else [])
    for name in required:
        if name not in columns:
            raise SchemaError(f"missing column {name}", column=name)
    for name in columns:
        if name not in ID_COLUMNS and name != TARGET_COLUMN and not _FEATURE_RE.match(name):
            raise SchemaError(f"unknown column {name}", column=name)
    names = _feature_columns(columns, expected_feature_count)
    if features_include:
        include = list(features_include)
        for name in include:
            if name not in names:
                raise SchemaError(f"missing column {name}", column=name)
        names = include

    time_id = _numeric(frame, "time_id", impute=False, integral=True)
    investment_id = _numeric(frame, "investment_id", impute=False, integral=True)
    has_target = TARGET_COLUMN in columns
    if has_target:
        target = _numeric(frame, TARGET_COLUMN, impute=impute_missing, integral=False)
        if not np.isfinite(target).all():
            row = int(np.flatnonzero(~np.isfinite(target))[0])
            raise SchemaError(
                f"non-finite value at row {row + 1}, column {TARGET_COLUMN}", column=TARGET_COLUMN, row=row + 1
            )
    else:
        target = np.zeros(len(frame), dtype=np.float64)
    features = np.empty((len(frame), len(names)), dtype=np.float32)
    for col, name in enumerate(names):
        features[:, col] = _numeric(frame, name, impute=impute_missing, integral=False)
    if not np.isfinite(features).all():
        row, col = (int(v) for v in np.argwhere(~np.isfinite(features))[0])
        raise SchemaError(f"non-finite value at row {row + 1}, column {names[col]}", column=names[col], row=row + 1)

    ds = Dataset(
        time_id=time_id,
        investment_id=investment_id,
        target=target,
        features=features,
        feature_names=tuple(names),
        vocab=Vocab.from_ids(investment_id),
        row_id=frame["row_id"].astype(str).to_numpy(dtype=object),
        has_target=has_target,
    )
    logger.info("loaded %s: %d rows, %d features, %d ids", path, ds.n_rows, ds.feature_count, len(ds.vocab))
    uni_write("data.loaded", None, path=str(path), rows=ds.n_rows, features=ds.feature_count, ids=len(ds.vocab))
    return ds


def write_csv(ds: Dataset, path: str | Path) -> Path:
    """Write ``ds`` with full precision so ``load_csv`` reads back identical values."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    columns: dict = {
        "row_id": ds.row_ids(),
        "time_id": ds.time_id,
        "investment_id": ds.investment_id,
        TARGET_COLUMN: ds.target,
    }
    # float32 features are upcast so every written decimal is exact
    wide = ds.features.astype(np.float64)
    for col, name in enumerate(ds.feature_names):
        columns[name] = wide[:, col]
    pd.DataFrame(columns).to_csv(path, index=False, encoding="utf-8")
    return path


def write_predictions(row_ids: Sequence[str], predictions: np.ndarray, path: str | Path) -> Path:
    """``row_id,prediction`` with round-trip decimals."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame({"row_id": list(row_ids), "prediction": np.asarray(predictions, dtype=np.float64)})
    frame.to_csv(path, index=False, encoding="utf-8")
    return path


__all__ = ["ID_COLUMNS", "TARGET_COLUMN", "load_csv", "write_csv", "write_predictions"]
