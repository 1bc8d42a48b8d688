"""Exact linear algebra over GF(3).

Vectors and matrices are numpy int8 arrays with entries in {0, 1, 2},
where 2 plays the role of -1.  Everything here is plain dense
arithmetic mod 3; the only concession to speed is that bulk codeword
enumeration elsewhere packs vectors into two bit-planes (see
``pack_rows`` / ``packed_weight``), whose semantics are pinned to the
unpacked entry sequence by the tests.
"""

from __future__ import annotations

import numpy as np

# multiplicative inverses mod 3 (index 0 unused)
_INV = (0, 1, 2)


def asgf3(a) -> np.ndarray:
    """Coerce to an int8 array reduced mod 3."""
    return np.asarray(a, dtype=np.int64).astype(np.int8) % 3


def mmul(a, b) -> np.ndarray:
    """Matrix product over GF(3).

    Uses a float32 BLAS path for large operands (entries stay far below
    the 2**24 exact-integer limit of float32 for every size we use).
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.size * b.shape[-1] > 1 << 14:
        prod = np.rint(a.astype(np.float32) @ b.astype(np.float32)).astype(np.int64)
    else:
        prod = a.astype(np.int64) @ b.astype(np.int64)
    return (prod % 3).astype(np.int8)


def weight(v) -> int:
    """Hamming weight of a vector."""
    return int(np.count_nonzero(np.asarray(v)))


def row_weights(m) -> np.ndarray:
    return np.count_nonzero(np.asarray(m), axis=-1)


def rref(m):
    """Reduced row echelon form over GF(3).

    Returns ``(reduced, rank, pivots)``.  Pivot search scans
    top-to-bottom within each column, left-to-right over columns;
    pivots are normalized to 1.  Row space is preserved.
    """
    r = asgf3(m).copy()
    rows, cols = r.shape
    pivots = []
    pr = 0
    for c in range(cols):
        if pr >= rows:
            break
        col = r[pr:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = pr + int(nz[0])
        if i != pr:
            r[[pr, i]] = r[[i, pr]]
        if r[pr, c] != 1:
            r[pr] = (r[pr] * _INV[r[pr, c]]) % 3
        # eliminate the column everywhere else
        other = np.nonzero(r[:, c])[0]
        other = other[other != pr]
        if other.size:
            r[other] = (r[other] - np.outer(r[other, c], r[pr])) % 3
        pivots.append(c)
        pr += 1
    return r, len(pivots), pivots


def rank(m) -> int:
    return rref(m)[1]


def kernel(m) -> np.ndarray:
    """Basis (as rows) of the right kernel {x : m @ x == 0} over GF(3)."""
    m = asgf3(m)
    rows, cols = m.shape
    r, rk, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int8)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for pr, pc in enumerate(pivots):
            basis[i, pc] = (-r[pr, fc]) % 3
    return basis


def solve_right(a, b):
    """One solution x of a @ x = b (column semantics), or None.

    ``b`` may be a matrix, one column per right-hand side.
    """
    a = asgf3(a)
    b = asgf3(b)
    single = b.ndim == 1
    if single:
        b = b[:, None]
    aug = np.hstack([a, b])
    r, rk, pivots = rref(aug)
    n = a.shape[1]
    if any(p >= n for p in pivots):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int8)
    for pr, pc in enumerate(pivots):
        x[pc] = r[pr, n:]
    return x[:, 0] if single else x


def inv(m) -> np.ndarray:
    """Inverse of a square matrix over GF(3); raises if singular."""
    m = asgf3(m)
    n = m.shape[0]
    x = solve_right(m, np.eye(n, dtype=np.int8))
    if x is None:
        raise np.linalg.LinAlgError("matrix is singular over GF(3)")
    return x


def in_rowspace(gen, v) -> bool:
    """Is v in the row space of gen?  gen need not be reduced."""
    gen = asgf3(gen)
    v = asgf3(v)
    if v.ndim == 1:
        v = v[None, :]
    base = rank(gen)
    return rank(np.vstack([gen, v])) == base


def dot_weighted(x, y, weights) -> int:
    """Weighted inner product sum_i w_i * x_i * y_i in GF(3)."""
    x = asgf3(x)
    y = asgf3(y)
    w = asgf3(weights)
    if not (len(x) == len(y) == len(w)):
        raise ValueError("length mismatch in dot_weighted")
    return int(np.sum(w.astype(np.int64) * x * y) % 3)


# ---------------------------------------------------------------------------
# packed bit-plane representation: plane 0 holds the "value 1" mask,
# plane 1 the "value 2" mask, 64 coordinates per uint64 word.

def pack_rows(m):
    """Pack rows of a GF(3) matrix into (lo, hi) uint64 bit-planes."""
    m = asgf3(m)
    if m.ndim == 1:
        m = m[None, :]
    rows, cols = m.shape
    words = (cols + 63) // 64
    lo = np.zeros((rows, words), dtype=np.uint64)
    hi = np.zeros((rows, words), dtype=np.uint64)
    for c in range(cols):
        w, b = divmod(c, 64)
        bit = np.uint64(1) << np.uint64(b)
        lo[:, w] |= np.where(m[:, c] == 1, bit, np.uint64(0))
        hi[:, w] |= np.where(m[:, c] == 2, bit, np.uint64(0))
    return lo, hi


def unpack_rows(lo, hi, cols) -> np.ndarray:
    rows = lo.shape[0]
    m = np.zeros((rows, cols), dtype=np.int8)
    for c in range(cols):
        w, b = divmod(c, 64)
        bit = np.uint64(1) << np.uint64(b)
        m[:, c] = np.where(lo[:, w] & bit, 1, 0) + np.where(hi[:, w] & bit, 2, 0)
    return m


def packed_weight(lo, hi) -> np.ndarray:
    """Row weights of packed vectors: popcount of (lo | hi)."""
    return np.bitwise_count(lo | hi).sum(axis=1).astype(np.int64)
