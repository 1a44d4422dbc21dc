# SPDX-License-Identifier: AGPL-3.0-or-later
"""Central finite-difference checks for every layer, in 64-bit."""
from __future__ import annotations

import numpy as np
import pytest

from core.layers import (
    EmbeddingTable,
    concat_cols,
    embedding_backward,
    embedding_lookup,
    init_linear,
    linear_backward,
    linear_forward,
    split_cols,
    swish,
    swish_backward,
)
from core.tensor import RngState, seeded_normal

STEP = 1e-5
SEEDS = [0, 1, 2, 3, 4]


def numeric_grad(fn, arr):
    """d fn() / d arr by central differences, perturbing ``arr`` in place."""
    grad = np.zeros_like(arr)
    flat = arr.reshape(-1)
    out = grad.reshape(-1)
    for i in range(flat.size):
        keep = flat[i]
        flat[i] = keep + STEP
        up = fn()
        flat[i] = keep - STEP
        down = fn()
        flat[i] = keep
        out[i] = (up - down) / (2 * STEP)
    return grad


def rel_err(a, b):
    scale = max(np.linalg.norm(a), np.linalg.norm(b), 1e-12)
    return float(np.linalg.norm(a - b) / scale)


@pytest.mark.parametrize("seed", SEEDS)
def test_linear_gradients(seed):
    rng = RngState(seed)
    p = init_linear(rng, 4, 3, dtype=np.float64)
    p.bias[:] = seeded_normal(rng, 0, 0.1, 1, 3).reshape(-1)
    x = seeded_normal(rng, 0, 1, 3, 4)
    r = seeded_normal(rng, 0, 1, 3, 3)

    def loss():
        return float((linear_forward(x, p) * r).sum())

    d_x, d_w, d_b = linear_backward(x, p, r)
    assert rel_err(d_x, numeric_grad(loss, x)) < 1e-6
    assert rel_err(d_w, numeric_grad(loss, p.weight)) < 1e-6
    assert rel_err(d_b, numeric_grad(loss, p.bias)) < 1e-6


@pytest.mark.parametrize("seed", SEEDS)
def test_swish_gradient(seed):
    rng = RngState(seed)
    x = seeded_normal(rng, 0, 2, 4, 5)
    r = seeded_normal(rng, 0, 1, 4, 5)

    def loss():
        return float((swish(x) * r).sum())

    assert rel_err(swish_backward(x, r), numeric_grad(loss, x)) < 1e-4


@pytest.mark.parametrize("seed", SEEDS)
def test_embedding_gradient(seed):
    rng = RngState(seed)
    table = EmbeddingTable(seeded_normal(rng, 0, 1, 5, 3))
    ids = np.array([1, 3, 1, 0])
    r = seeded_normal(rng, 0, 1, 4, 3)

    def loss():
        return float((embedding_lookup(ids, table) * r).sum())

    analytic = embedding_backward(ids, r, table.vocab_size)
    assert rel_err(analytic, numeric_grad(loss, table.table)) < 1e-4
    assert not analytic[[2, 4]].any()


@pytest.mark.parametrize("seed", SEEDS)
def test_concat_gradient_splits_blocks(seed):
    rng = RngState(seed)
    a = seeded_normal(rng, 0, 1, 3, 2)
    b = seeded_normal(rng, 0, 1, 3, 4)
    r = seeded_normal(rng, 0, 1, 3, 6)

    def loss():
        return float((concat_cols(a, b) * r).sum())

    d_a, d_b = split_cols(r, 2)
    assert rel_err(d_a, numeric_grad(loss, a)) < 1e-4
    assert rel_err(d_b, numeric_grad(loss, b)) < 1e-4
    assert np.array_equal(d_a, r[:, :2]) and np.array_equal(d_b, r[:, 2:])
