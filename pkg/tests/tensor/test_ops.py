# SPDX-License-Identifier: AGPL-3.0-or-later
from __future__ import annotations

import numpy as np
import pytest

from core.errors import ArgumentError, ShapeError
from core.tensor import (
    RngState,
    add_bias_rows,
    as_matrix,
    identity,
    matmul,
    permutation,
    seeded_normal,
    seeded_uniform,
    zeros,
)


def _naive(a, b):
    m, k = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), dtype=np.result_type(a, b))
    for i in range(m):
        for j in range(n):
            acc = out.dtype.type(0)
            for kk in range(k):
                acc = out.dtype.type(acc + a[i, kk] * b[kk, j])
            out[i, j] = acc
    return out


def test_matmul_identity_is_exact():
    a = as_matrix([[1, 2], [3, 4]])
    assert np.array_equal(matmul(a, identity(2)), a)


def test_matmul_small_product():
    a = as_matrix([[1, 2], [3, 4]])
    b = as_matrix([[5, 6], [7, 8]])
    assert matmul(a, b).tolist() == [[19, 22], [43, 50]]
    assert matmul(a, b, deterministic=True).tolist() == [[19, 22], [43, 50]]


def test_matmul_zero_annihilates():
    a = seeded_uniform(RngState(1), -1, 1, 3, 4)
    assert not matmul(a, zeros(4, 2)).any()


@pytest.mark.parametrize("dtype", [np.float32, np.float64])
def test_fixed_order_kernel_matches_naive_loop_bitwise(dtype):
    rng = RngState(11)
    a = seeded_uniform(rng, -1, 1, 4, 7, dtype=dtype)
    b = seeded_uniform(rng, -1, 1, 7, 3, dtype=dtype)
    assert np.array_equal(matmul(a, b, deterministic=True), _naive(a, b))


def test_matmul_transposes():
    rng = RngState(2)
    a = seeded_uniform(rng, -1, 1, 5, 3, dtype=np.float64)
    b = seeded_uniform(rng, -1, 1, 5, 4, dtype=np.float64)
    np.testing.assert_allclose(matmul(a, b, transpose_a=True), a.T @ b, rtol=1e-12)
    np.testing.assert_allclose(matmul(b, b, transpose_b=True), b @ b.T, rtol=1e-12)


def test_matmul_shape_mismatch_names_both_shapes():
    with pytest.raises(ShapeError) as excinfo:
        matmul(zeros(2, 3), zeros(2, 3))
    assert "(2, 3) vs (2, 3)" in str(excinfo.value)


def test_add_bias_rows():
    x = as_matrix([[1, 1], [2, 2]])
    assert add_bias_rows(x, np.array([10, 20], dtype=np.float32)).tolist() == [[11, 21], [12, 22]]
    assert np.array_equal(add_bias_rows(x, np.zeros(2, dtype=np.float32)), x)
    row = as_matrix([[3, 4]])
    assert add_bias_rows(row, np.array([1, 1], dtype=np.float32)).tolist() == [[4, 5]]
    with pytest.raises(ShapeError):
        add_bias_rows(x, np.zeros(3, dtype=np.float32))


def test_seeded_uniform_is_reproducible():
    a = seeded_uniform(RngState(7), -0.5, 0.5, 10, 10)
    b = seeded_uniform(RngState(7), -0.5, 0.5, 10, 10)
    assert a.tobytes() == b.tobytes()
    assert a.min() >= -0.5 and a.max() < 0.5


def test_seeded_uniform_degenerate_interval():
    out = seeded_uniform(RngState(3), 0.25, 0.25, 4, 4)
    assert (out == np.float32(0.25)).all()


def test_seeded_uniform_mean():
    draws = seeded_uniform(RngState(12345), 0.0, 1.0, 1, 100_000, dtype=np.float64)
    assert abs(draws.mean() - 0.5) < 0.01


def test_seeded_uniform_rejects_inverted_bounds():
    with pytest.raises(ArgumentError):
        seeded_uniform(RngState(0), 1.0, 0.0, 2, 2)


def test_rng_children_ignore_parent_draw_count():
    root = RngState(5)
    before = seeded_normal(root.child("shuffle", "joint"), 0, 1, 1, 8)
    root.generator.random(100)
    after = seeded_normal(root.child("shuffle", "joint"), 0, 1, 1, 8)
    other = seeded_normal(root.child("shuffle", "pretrain_dense"), 0, 1, 1, 8)
    assert np.array_equal(before, after)
    assert not np.array_equal(before, other)


def test_permutation_is_seeded():
    assert permutation(RngState(9), 20).tolist() == permutation(RngState(9), 20).tolist()
    assert sorted(permutation(RngState(9), 20).tolist()) == list(range(20))


def test_as_matrix_promotes_vectors_to_rows():
    assert as_matrix([1.0, 2.0]).shape == (1, 2)
    with pytest.raises(ShapeError):
        as_matrix(np.zeros((2, 2, 2)))


def test_as_matrix_rejects_non_finite_values():
    with pytest.raises(ArgumentError):
        as_matrix([[np.nan, 1.0]])
    with pytest.raises(ArgumentError):
        as_matrix(np.array([[1.0], [np.inf]], dtype=np.float32))


def test_default_kernel_matches_naive_loop_on_long_sums():
    rng = RngState(21)
    a = seeded_uniform(rng, -1, 1, 8, 300)
    b = seeded_uniform(rng, -1, 1, 300, 8)
    assert np.array_equal(matmul(a, b), _naive(a, b))


def test_fast_kernel_is_opt_in(fast_matmul):
    rng = RngState(22)
    a = seeded_uniform(rng, -1, 1, 16, 16)
    b = seeded_uniform(rng, -1, 1, 16, 16)
    np.testing.assert_allclose(matmul(a, b), _naive(a, b), rtol=1e-5, atol=1e-6)
    assert np.array_equal(matmul(a, b, deterministic=True), _naive(a, b))
