"""Linear codes over GF(3).

A ``Code`` is the row space of a generator matrix, always stored in
reduced row echelon form so that two Code values describe the same
subspace iff their generator arrays are identical.
"""

from __future__ import annotations

import io
import hashlib

import numpy as np

from . import gf3

# full weight_enumerator enumerates 3^k codewords; refuse beyond this
DEFAULT_ENUM_BUDGET = 3**20


class Code:
    """A ternary linear code with canonical rref generator matrix."""

    __slots__ = ("n", "k", "gen")

    def __init__(self, gen, n=None):
        gen = gf3.asgf3(gen)
        if gen.ndim != 2:
            raise ValueError("generator must be a 2-D array")
        r, rk, _ = gf3.rref(gen)
        self.gen = r[:rk].copy()
        self.gen.setflags(write=False)
        self.n = int(gen.shape[1] if n is None else n)
        self.k = int(rk)

    @classmethod
    def zero(cls, n):
        return cls(np.zeros((1, n), dtype=np.int8))

    def __eq__(self, other):
        return (isinstance(other, Code) and self.n == other.n
                and self.k == other.k and np.array_equal(self.gen, other.gen))

    def __hash__(self):
        return hash((self.n, self.k, self.gen.tobytes()))

    def __repr__(self):
        return f"Code[{self.n},{self.k}]"

    def gen_hash(self) -> str:
        """Hash of the canonical generator, used for dedup in searches."""
        h = hashlib.sha256()
        h.update(f"{self.n},{self.k};".encode())
        h.update(self.gen.tobytes())
        return h.hexdigest()[:16]

    def contains(self, v) -> bool:
        v = gf3.asgf3(v)
        if v.shape[-1] != self.n:
            raise ValueError("length mismatch")
        if self.k == 0:
            return not np.any(v)
        return gf3.in_rowspace(self.gen, v)

    def dual(self) -> "Code":
        if self.k == 0:
            return Code(np.eye(self.n, dtype=np.int8))
        return Code(gf3.kernel(self.gen), n=self.n)

    def is_self_dual(self) -> bool:
        if self.n != 2 * self.k:
            return False
        return not np.any(gf3.mmul(self.gen, self.gen.T))

    def is_self_orthogonal(self) -> bool:
        return not np.any(gf3.mmul(self.gen, self.gen.T))


def orthogonal_sum(cs) -> Code:
    """Block-diagonal stack: length and dimension add up."""
    cs = list(cs)
    if not cs:
        raise ValueError("empty summand list")
    n = sum(c.n for c in cs)
    rows = []
    off = 0
    for c in cs:
        block = np.zeros((c.k, n), dtype=np.int8)
        block[:, off : off + c.n] = c.gen
        rows.append(block)
        off += c.n
    return Code(np.vstack(rows) if rows else np.zeros((1, n), dtype=np.int8))


def all_codewords(gen, chunk=1 << 14):
    """Yield chunks of all 3^k codewords of the row space of gen."""
    gen = gf3.asgf3(gen)
    k = gen.shape[0]
    total = 3**k
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        msgs = np.empty((len(idx), k), dtype=np.int8)
        rem = idx.copy()
        for j in range(k):
            msgs[:, j] = rem % 3
            rem //= 3
        yield gf3.mmul(msgs, gen)


def weight_enumerator(c: Code, budget=DEFAULT_ENUM_BUDGET) -> np.ndarray:
    """Exact weight distribution a[0..n] by full enumeration."""
    if 3**c.k > budget:
        raise ValueError(f"enumeration budget exceeded: 3^{c.k} codewords")
    counts = np.zeros(c.n + 1, dtype=np.int64)
    if c.k == 0:
        counts[0] = 1
        return counts
    for words in all_codewords(c.gen):
        w = np.count_nonzero(words, axis=1)
        counts += np.bincount(w, minlength=c.n + 1)
    return counts


# ---------------------------------------------------------------------------
# text format (bit-exact):
#   ternary-code v1
#   n=<n> k=<k>
#   <k rows of n characters from {0,1,2}>

MAGIC = "ternary-code v1"


def write_code(c: Code, f) -> None:
    if isinstance(f, (str, bytes)):
        with open(f, "w") as fh:
            write_code(c, fh)
        return
    f.write(MAGIC + "\n")
    f.write(f"n={c.n} k={c.k}\n")
    for row in c.gen:
        f.write("".join(str(int(x)) for x in row) + "\n")


def read_code(f) -> Code:
    if isinstance(f, (str, bytes)):
        with open(f) as fh:
            return read_code(fh)
    lines = [ln.rstrip("\n") for ln in f]
    if not lines or lines[0] != MAGIC:
        raise ValueError("not a ternary-code v1 file")
    try:
        fields = dict(kv.split("=") for kv in lines[1].split())
        n, k = int(fields["n"]), int(fields["k"])
    except Exception as e:
        raise ValueError(f"malformed header: {lines[1]!r}") from e
    if k < 1:
        raise ValueError("empty code (k < 1) rejected")
    rows = lines[2 : 2 + k]
    if len(rows) != k or any(len(r) != n or set(r) - set("012") for r in rows):
        raise ValueError("malformed row data")
    gen = np.array([[int(ch) for ch in r] for r in rows], dtype=np.int8)
    c = Code(gen)
    if c.k != k or not np.array_equal(c.gen, gen):
        raise ValueError("rows are not a canonical rref generator")
    return c


def code_to_text(c: Code) -> str:
    buf = io.StringIO()
    write_code(c, buf)
    return buf.getvalue()
