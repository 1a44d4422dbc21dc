# SPDX-License-Identifier: AGPL-3.0-or-later
from __future__ import annotations

import numpy as np
import pytest

from core.data import SynthSpec, generate_synthetic
from core.errors import ConfigError
from core.metrics import pearson
from core.tensor import RngState


def test_shape_contract():
    ds = generate_synthetic(SynthSpec(rows=500, ids=20, features=7, seed=1))
    assert ds.n_rows == 500
    assert ds.feature_count == 7
    assert np.unique(ds.investment_id).shape[0] == 20
    assert ds.time_id.max() == 24


def test_noise_free_linear_target_is_recovered():
    ds = generate_synthetic(SynthSpec(rows=400, ids=10, features=5, id_std=0, noise_std=0, nonlinearity=0, seed=2))
    assert pearson(ds.truth.linear_part(ds.features), ds.target) == pytest.approx(1.0, abs=1e-12)


def test_without_id_effects_ids_carry_no_signal():
    ds = generate_synthetic(SynthSpec(rows=400, ids=10, features=5, id_std=0, seed=4))
    assert all(v == 0.0 for v in ds.truth.id_effects.values())
    linear = ds.truth.linear_part(ds.features)
    order = RngState(0).generator.permutation(ds.n_rows)
    assert pearson(linear[order], ds.target[order]) == pytest.approx(pearson(linear, ds.target), abs=1e-12)


def test_id_effects_are_stored_per_raw_id():
    ds = generate_synthetic(SynthSpec(rows=300, ids=30, features=4, noise_std=0, nonlinearity=0, seed=5))
    alpha = np.array([ds.truth.id_effects[int(raw)] for raw in ds.investment_id])
    np.testing.assert_allclose(ds.target, ds.truth.linear_part(ds.features) + alpha, rtol=0, atol=1e-12)


def test_generation_is_seeded():
    a = generate_synthetic(SynthSpec(rows=100, ids=5, features=3, seed=9))
    b = generate_synthetic(SynthSpec(rows=100, ids=5, features=3, seed=9))
    c = generate_synthetic(SynthSpec(rows=100, ids=5, features=3, seed=10))
    assert a.target.tobytes() == b.target.tobytes()
    assert a.target.tobytes() != c.target.tobytes()


def test_spec_validation():
    with pytest.raises(ConfigError):
        SynthSpec.create(rows=5, ids=10)
    with pytest.raises(ConfigError):
        SynthSpec.create(noise_std=-1.0)
