# SPDX-License-Identifier: AGPL-3.0-or-later
from __future__ import annotations

import numpy as np
import pytest

from core.errors import ArgumentError, ShapeError, VocabIndexError
from core.layers import (
    EmbeddingTable,
    LinearParams,
    concat_cols,
    embedding_backward,
    embedding_lookup,
    glorot_bound,
    init_linear,
    linear_backward,
    linear_forward,
    mse,
    split_cols,
    swish,
    swish_grad,
)
from core.tensor import RngState, as_matrix, identity, seeded_uniform


def _params(weight, bias):
    return LinearParams(np.asarray(weight, dtype=np.float32), np.asarray(bias, dtype=np.float32))


def test_linear_identity_layer():
    x = as_matrix([[1.5, -2.0], [0.0, 3.0]])
    p = LinearParams(identity(2), np.zeros(2, dtype=np.float32))
    assert np.array_equal(linear_forward(x, p), x)


def test_linear_hand_example():
    out = linear_forward(as_matrix([[1, 2]]), _params([[1], [1]], [0.5]))
    assert out.tolist() == [[3.5]]


def test_linear_zero_input_gives_bias():
    p = _params([[1, 2, 3], [4, 5, 6]], [0.1, 0.2, 0.3])
    out = linear_forward(np.zeros((4, 2), dtype=np.float32), p)
    assert all(np.array_equal(row, p.bias) for row in out)


def test_linear_forward_rejects_wrong_width():
    with pytest.raises(ShapeError):
        linear_forward(np.zeros((1, 3), dtype=np.float32), _params([[1], [1]], [0]))


def test_linear_backward_zero_upstream():
    p = init_linear(RngState(0), 3, 2)
    x = seeded_uniform(RngState(1), -1, 1, 4, 3)
    grads = linear_backward(x, p, np.zeros((4, 2), dtype=np.float32))
    assert all(not g.any() for g in grads)


def test_linear_backward_single_row_is_outer_product():
    p = init_linear(RngState(0), 3, 2, dtype=np.float64)
    x = np.array([[1.0, -2.0, 0.5]])
    d_out = np.array([[0.25, -1.0]])
    _, d_w, d_b = linear_backward(x, p, d_out)
    np.testing.assert_allclose(d_w, np.outer(x[0], d_out[0]), rtol=0, atol=1e-15)
    np.testing.assert_allclose(d_b, d_out[0])


def test_init_linear_respects_glorot_bound():
    p = init_linear(RngState(4), 30, 20)
    s = glorot_bound(30, 20)
    assert np.abs(p.weight).max() <= s
    assert not p.bias.any()


def test_swish_reference_values():
    x = np.array([[0.0, 1.0, 20.0]], dtype=np.float64)
    y = swish(x)
    assert y[0, 0] == 0.0
    assert abs(y[0, 1] - 0.731059) < 1e-6
    assert abs(y[0, 2] - 20.0) < 1e-7
    assert swish_grad(np.zeros((1, 1)))[0, 0] == 0.5


def test_swish_is_finite_for_large_inputs():
    x = np.array([[-1000.0, 1000.0]], dtype=np.float32)
    assert np.isfinite(swish(x)).all()
    assert np.isfinite(swish_grad(x)).all()


@pytest.mark.parametrize("dtype", [np.float32, np.float64])
def test_swish_is_bounded_below(dtype):
    grid = np.linspace(-60.0, 60.0, 240_001, dtype=dtype).reshape(1, -1)
    y = swish(grid)
    assert y.min() >= -0.279
    if dtype is np.float64:
        # minimum sits near x = -1.2785
        assert abs(float(grid[0, int(np.argmin(y))]) + 1.2785) < 1e-3


def _table(rows):
    return EmbeddingTable(np.asarray(rows, dtype=np.float32))


def test_embedding_lookup_rows():
    t = _table([[0, 0], [1, 2], [3, 4]])
    assert embedding_lookup(np.array([2]), t).tolist() == [[3, 4]]
    assert embedding_lookup(np.array([1, 1]), t).tolist() == [[1, 2], [1, 2]]
    assert embedding_lookup(np.array([0]), t).tolist() == [[0, 0]]


def test_embedding_lookup_out_of_range():
    with pytest.raises(VocabIndexError):
        embedding_lookup(np.array([3]), _table([[0], [1], [2]]))
    with pytest.raises(VocabIndexError):
        embedding_lookup(np.array([-1]), _table([[0], [1], [2]]))


def test_embedding_backward_scatter_adds_repeats():
    d_out = np.array([[1.0, 2.0], [10.0, 20.0], [100.0, 200.0]], dtype=np.float32)
    grad = embedding_backward(np.array([2, 1, 2]), d_out, 4)
    assert grad.tolist() == [[0, 0], [10, 20], [101, 202], [0, 0]]


def test_embedding_backward_distinct_ids_copy_rows():
    d_out = np.array([[1.0], [2.0]], dtype=np.float32)
    grad = embedding_backward(np.array([3, 1]), d_out, 4)
    assert grad.reshape(-1).tolist() == [0, 2, 0, 1]


def test_embedding_backward_conserves_mass():
    ids = RngState(8).generator.integers(0, 6, size=50)
    d_out = RngState(9).generator.integers(-5, 6, size=(50, 3)).astype(np.float32)
    grad = embedding_backward(ids, d_out, 6)
    assert np.array_equal(grad.sum(axis=0), d_out.sum(axis=0))
    assert not embedding_backward(ids, np.zeros_like(d_out), 6).any()


def test_embedding_table_requires_oov_row():
    with pytest.raises(ArgumentError):
        _table([[1.0, 2.0]])


def test_concat_and_split_are_inverse():
    a = as_matrix([[1.0], [3.0]])
    b = as_matrix([[2.0, 5.0], [4.0, 6.0]])
    joined = concat_cols(a, b)
    assert concat_cols(as_matrix([[1]]), as_matrix([[2]])).tolist() == [[1, 2]]
    left, right = split_cols(joined, 1)
    assert np.array_equal(left, a) and np.array_equal(right, b)
    with pytest.raises(ShapeError):
        concat_cols(a, as_matrix([[1.0]]))


def test_mse_examples():
    loss, grad = mse(np.array([[0.0]]), np.array([2.0]))
    assert loss == 4.0
    assert grad.tolist() == [[-4.0]]
    loss, grad = mse(np.array([1.0, 2.0]), np.array([1.0, 2.0]))
    assert loss == 0.0 and not grad.any()


def test_mse_rejects_empty_and_mismatch():
    with pytest.raises(ArgumentError):
        mse(np.zeros(0), np.zeros(0))
    with pytest.raises(ShapeError):
        mse(np.zeros(2), np.zeros(3))


def test_mse_gradient_matches_finite_differences():
    rng = RngState(21)
    pred = rng.generator.standard_normal(5)
    target = rng.generator.standard_normal(5)
    _, grad = mse(pred, target)
    h = 1e-5
    numeric = np.empty(5)
    for i in range(5):
        up, down = pred.copy(), pred.copy()
        up[i] += h
        down[i] -= h
        numeric[i] = (mse(up, target)[0] - mse(down, target)[0]) / (2 * h)
    assert np.linalg.norm(grad - numeric) / np.linalg.norm(numeric) < 1e-8
