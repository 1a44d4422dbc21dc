# SPDX-License-Identifier: AGPL-3.0-or-later
from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from core.data import SynthSpec, generate_synthetic, load_csv, write_csv, write_predictions
from core.errors import SchemaError

HEADER = "row_id,time_id,investment_id,target,f_0,f_1,f_2\n"


def _write(path: Path, body: str, header: str = HEADER) -> Path:
    path.write_text(header + body, encoding="utf-8")
    return path


def test_hand_written_file_roundtrips_values(tmp_path):
    path = _write(
        tmp_path / "d.csv",
        "0_42,0,42,0.125,1.5,-2.25,3.0\n"
        "0_7,0,7,-0.5,0.1,0.2,0.3\n"
        "1_42,1,42,2.0,-1.0,0.0,1e-3\n",
    )
    ds = load_csv(path, expected_feature_count=3)
    assert ds.n_rows == 3
    assert ds.feature_names == ("f_0", "f_1", "f_2")
    assert ds.time_id.tolist() == [0, 0, 1]
    assert ds.investment_id.tolist() == [42, 7, 42]
    assert ds.target.tolist() == [0.125, -0.5, 2.0]
    assert ds.features[1].tolist() == np.array([0.1, 0.2, 0.3], dtype=np.float32).tolist()
    assert ds.row_ids().tolist() == ["0_42", "0_7", "1_42"]


def test_shared_ids_map_to_same_dense_index(tmp_path):
    path = _write(tmp_path / "d.csv", "0_42,0,42,1,1,1,1\n0_5,0,5,1,1,1,1\n1_42,1,42,1,1,1,1\n")
    dense = load_csv(path).dense_ids
    assert dense[0] == dense[2] != 0
    assert dense[1] not in (0, dense[0])


def test_missing_feature_column_is_named(tmp_path):
    path = _write(tmp_path / "d.csv", "0_1,0,1,1,1,1\n", header="row_id,time_id,investment_id,target,f_0,f_2\n")
    with pytest.raises(SchemaError, match="f_1") as excinfo:
        load_csv(path, expected_feature_count=3)
    assert excinfo.value.column == "f_1"


def test_extra_feature_column_is_a_count_mismatch(tmp_path):
    path = _write(tmp_path / "d.csv", "0_1,0,1,1,1,1,1\n")
    with pytest.raises(SchemaError, match="feature-count mismatch"):
        load_csv(path, expected_feature_count=2)


def test_unparseable_cell_names_row_and_column(tmp_path):
    path = _write(tmp_path / "d.csv", "0_1,0,1,1,1,1,1\n0_2,0,2,1,abc,1,1\n")
    with pytest.raises(SchemaError) as excinfo:
        load_csv(path)
    assert (excinfo.value.row, excinfo.value.column) == (2, "f_0")
    assert "unparseable" in str(excinfo.value)


def test_infinite_target_is_rejected(tmp_path):
    path = _write(tmp_path / "d.csv", "0_1,0,1,0.5,1,1,1\n0_2,0,2,inf,1,1,1\n")
    with pytest.raises(SchemaError, match="non-finite") as excinfo:
        load_csv(path)
    assert (excinfo.value.row, excinfo.value.column) == (2, "target")


def test_missing_values_need_explicit_imputation(tmp_path):
    path = _write(tmp_path / "d.csv", "0_1,0,1,1,1,,1\n")
    with pytest.raises(SchemaError, match="missing value"):
        load_csv(path)
    ds = load_csv(path, impute_missing=True)
    assert ds.features[0].tolist() == [1.0, 0.0, 1.0]


def test_non_integer_ids_are_rejected(tmp_path):
    path = _write(tmp_path / "d.csv", "0_1,0,1.5,1,1,1,1\n")
    with pytest.raises(SchemaError, match="investment_id"):
        load_csv(path)


def test_unknown_column_is_rejected(tmp_path):
    path = _write(tmp_path / "d.csv", "0_1,0,1,1,1,1,1,9\n", header=HEADER.strip() + ",extra\n")
    with pytest.raises(SchemaError, match="unknown column extra"):
        load_csv(path)


def test_targetless_file_loads_for_prediction(tmp_path):
    path = _write(tmp_path / "d.csv", "0_1,0,1,1,1,1\n", header="row_id,time_id,investment_id,f_0,f_1,f_2\n")
    with pytest.raises(SchemaError, match="target"):
        load_csv(path)
    ds = load_csv(path, require_target=False)
    assert not ds.has_target


def test_feature_include_list_restricts_columns(tmp_path):
    path = _write(tmp_path / "d.csv", "0_1,0,1,1,10,11,12\n")
    ds = load_csv(path, features_include=["f_2", "f_0"])
    assert ds.feature_names == ("f_2", "f_0")
    assert ds.features[0].tolist() == [12.0, 10.0]


def test_missing_file_raises_file_not_found(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_csv(tmp_path / "nope.csv")


def test_write_then_load_is_exact(tmp_path):
    ds = generate_synthetic(SynthSpec(rows=60, ids=6, features=4, seed=3))
    back = load_csv(write_csv(ds, tmp_path / "synth.csv"))
    assert back.features.tobytes() == ds.features.tobytes()
    assert back.target.tobytes() == ds.target.tobytes()
    assert back.investment_id.tolist() == ds.investment_id.tolist()
    assert back.time_id.tolist() == ds.time_id.tolist()


def test_write_predictions_full_precision(tmp_path):
    preds = np.array([0.1 + 0.2, -1.0 / 3.0])
    path = write_predictions(["0_1", "0_2"], preds, tmp_path / "p.csv")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "row_id,prediction"
    assert [float(line.split(",")[1]) for line in lines[1:]] == preds.tolist()
