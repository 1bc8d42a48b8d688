import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ternary48 import gf3

rng = np.random.default_rng(1234)


def small_matrices(max_rows=6, max_cols=8):
    shapes = st.tuples(st.integers(1, max_rows), st.integers(1, max_cols))
    return shapes.flatmap(
        lambda s: arrays(np.int8, s, elements=st.integers(0, 2)))


def naive_mmul(a, b):
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % 3


def span_size(m):
    """|rowspace| by brute force; only for tiny matrices."""
    vecs = {tuple(np.zeros(m.shape[1], dtype=int))}
    for _ in range(m.shape[0] * 2):
        new = set()
        for v in vecs:
            for row in m:
                for c in (1, 2):
                    new.add(tuple((np.array(v) + c * row) % 3))
        if new <= vecs:
            break
        vecs |= new
    return len(vecs)


def test_asgf3_reduces_mod_3():
    a = gf3.asgf3([[-1, 3, 4], [5, -2, 0]])
    assert a.dtype == np.int8
    assert np.array_equal(a, [[2, 0, 1], [2, 1, 0]])


def test_mmul_small_vs_naive():
    for _ in range(50):
        a = rng.integers(0, 3, size=(rng.integers(1, 7), rng.integers(1, 7)))
        b = rng.integers(0, 3, size=(a.shape[1], rng.integers(1, 7)))
        assert np.array_equal(gf3.mmul(a, b), naive_mmul(a, b))


def test_mmul_large_uses_same_semantics():
    # crosses the float32 BLAS threshold
    a = rng.integers(0, 3, size=(300, 200))
    b = rng.integers(0, 3, size=(200, 300))
    assert np.array_equal(gf3.mmul(a, b), naive_mmul(a, b))


def test_weight_and_row_weights():
    assert gf3.weight([0, 1, 2, 0, 1]) == 3
    assert np.array_equal(gf3.row_weights([[0, 0], [1, 2], [0, 2]]), [0, 2, 1])


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rref_properties(m):
    r, rk, piv = gf3.rref(m)
    # pivots are strictly increasing unit columns
    assert list(piv) == sorted(piv)
    for i, c in enumerate(piv):
        col = np.zeros(r.shape[0], dtype=np.int8)
        col[i] = 1
        assert np.array_equal(r[:, c], col)
    # row space is preserved: each original row solves against r and back
    assert gf3.rank(np.vstack([m, r])) == rk
    # rank matches brute-force span size for small inputs
    if m.shape[0] <= 4 and m.shape[1] <= 5:
        assert span_size(gf3.asgf3(m)) == 3**rk


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_kernel_is_right_kernel(m):
    k = gf3.kernel(m)
    assert k.shape == (m.shape[1] - gf3.rank(m), m.shape[1])
    assert not np.any(naive_mmul(gf3.asgf3(m), k.T) % 3)
    assert gf3.rank(k) == k.shape[0]


@settings(max_examples=60, deadline=None)
@given(small_matrices(max_rows=5, max_cols=5), st.integers(0, 3**5 - 1))
def test_solve_right_finds_solutions(m, seed):
    m = gf3.asgf3(m)
    x_true = np.array([seed // 3**i % 3 for i in range(m.shape[1])],
                      dtype=np.int8)
    b = naive_mmul(m, x_true).astype(np.int8)
    x = gf3.solve_right(m, b)
    assert x is not None
    assert np.array_equal(naive_mmul(m, x) % 3, b % 3)


def test_solve_right_detects_inconsistency():
    a = np.array([[1, 0], [2, 0]], dtype=np.int8)
    assert gf3.solve_right(a, np.array([0, 1])) is None


def test_inv_round_trip_and_singular():
    for _ in range(20):
        n = int(rng.integers(1, 7))
        while True:
            m = rng.integers(0, 3, size=(n, n))
            if gf3.rank(m) == n:
                break
        assert np.array_equal(gf3.mmul(m, gf3.inv(m)), np.eye(n, dtype=np.int8))
    with pytest.raises(np.linalg.LinAlgError):
        gf3.inv(np.array([[1, 2], [2, 1]]))  # second row = 2 * first


def test_in_rowspace():
    gen = np.array([[1, 0, 2], [0, 1, 1]])
    assert gf3.in_rowspace(gen, [1, 1, 0])   # row1 + row2
    assert gf3.in_rowspace(gen, [2, 0, 1])   # 2 * row1
    assert not gf3.in_rowspace(gen, [0, 0, 1])


def test_dot_weighted_matches_definition():
    x, y, w = [1, 2, 0, 1], [2, 2, 1, 1], [1, 2, 1, 2]
    expect = sum(a * b * c for a, b, c in zip(x, y, w)) % 3
    assert gf3.dot_weighted(x, y, w) == expect
    with pytest.raises(ValueError):
        gf3.dot_weighted([1], [1, 2], [1, 1])


@settings(max_examples=40, deadline=None)
@given(small_matrices(max_rows=4, max_cols=70))
def test_pack_round_trip_and_weight(m):
    lo, hi = gf3.pack_rows(m)
    back = gf3.unpack_rows(lo, hi, m.shape[1])
    assert np.array_equal(back, gf3.asgf3(m))
    assert np.array_equal(gf3.packed_weight(lo, hi), gf3.row_weights(m))
