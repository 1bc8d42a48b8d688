"""Monomial transformations (signed permutations) over GF(3) and the
structure theory of prime-order code automorphisms: cycle types, fixed
codes, invariant complements, projections, and idempotent components.

A monomial sigma acts on a row vector v by (sigma v)_{perm[i]} =
signs[i] * v_i, i.e. signs are applied before the permutation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf3
from .codes import Code
from .polyfield import FactorSet, poly_eval_matrix


@dataclass(frozen=True)
class Monomial:
    perm: np.ndarray   # images, perm[i] = where coordinate i goes
    signs: np.ndarray  # int8 values in {1, 2}

    def __post_init__(self):
        perm = np.asarray(self.perm, dtype=np.int64)
        signs = gf3.asgf3(self.signs)
        n = len(perm)
        if sorted(perm.tolist()) != list(range(n)) or len(signs) != n:
            raise ValueError("not a permutation / length mismatch")
        if np.any(signs == 0):
            raise ValueError("signs must be nonzero")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "signs", signs)

    @property
    def n(self):
        return len(self.perm)

    @classmethod
    def identity(cls, n):
        return cls(np.arange(n), np.ones(n, dtype=np.int8))

    @classmethod
    def minus_identity(cls, n):
        return cls(np.arange(n), np.full(n, 2, dtype=np.int8))

    def apply(self, v):
        v = gf3.asgf3(v)
        out = np.empty_like(v)
        if v.ndim == 1:
            out[self.perm] = (self.signs.astype(np.int64) * v) % 3
        else:
            out[:, self.perm] = (self.signs.astype(np.int64) * v) % 3
        return out.astype(np.int8)

    def compose(self, other: "Monomial") -> "Monomial":
        """self after other: apply(a.compose(b), v) == apply(a, apply(b, v))."""
        perm = self.perm[other.perm]
        signs = (other.signs.astype(np.int64) * self.signs[other.perm]) % 3
        return Monomial(perm, signs)

    def inverse(self) -> "Monomial":
        inv_perm = np.empty_like(self.perm)
        inv_perm[self.perm] = np.arange(self.n)
        inv_signs = np.empty_like(self.signs)
        inv_signs[self.perm] = self.signs  # +-1 are self-inverse mod 3
        return Monomial(inv_perm, inv_signs)

    def is_identity(self) -> bool:
        return bool(np.all(self.perm == np.arange(self.n)) and np.all(self.signs == 1))

    def order(self) -> int:
        s, o = self, 1
        while not s.is_identity():
            s = s.compose(self)
            o += 1
            if o > 4 * self.n:
                raise RuntimeError("order larger than expected")
        return o

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.int8)
        m[np.arange(self.n), self.perm] = self.signs
        return m

    def perm_cycles(self):
        """Cycles of the permutational part, each starting at its least
        element, sorted by that element; fixed points listed separately."""
        seen = np.zeros(self.n, dtype=bool)
        cycles, fixed = [], []
        for i in range(self.n):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = int(self.perm[i])
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = int(self.perm[j])
            if len(cyc) == 1:
                fixed.append(i)
            else:
                cycles.append(cyc)
        return cycles, fixed


@dataclass(frozen=True)
class CycleType:
    p: int
    t: int
    f: int


@dataclass(frozen=True)
class InvolutionType:
    t: int
    a: int
    f: int


def is_automorphism(c: Code, s: Monomial) -> bool:
    if s.n != c.n:
        raise ValueError("length mismatch")
    images = s.apply(c.gen)
    return gf3.rank(np.vstack([c.gen, images])) == c.k


def cycle_type(s: Monomial, p: int) -> CycleType:
    cycles, fixed = s.perm_cycles()
    if any(len(c) != p for c in cycles):
        raise ValueError(f"permutational part is not of order 1 or {p}")
    return CycleType(p=p, t=len(cycles), f=len(fixed))


def fixed_code(c: Code, s: Monomial) -> Code:
    """{v in C : sigma(v) = v}."""
    if not is_automorphism(c, s):
        raise ValueError("sigma is not an automorphism of the code")
    m = s.matrix()
    a = (m - np.eye(c.n, dtype=np.int8)) % 3
    h = gf3.kernel(c.gen) if c.k < c.n else np.zeros((0, c.n), dtype=np.int8)
    return Code(gf3.kernel(np.vstack([h, a.T])), n=c.n)


def _cycle_constraints(s: Monomial):
    cycles, fixed = s.perm_cycles()
    rows = []
    for cyc in cycles:
        r = np.zeros(s.n, dtype=np.int8)
        r[cyc] = 1
        rows.append(r)
    for i in fixed:
        r = np.zeros(s.n, dtype=np.int8)
        r[i] = 1
        rows.append(r)
    return np.array(rows, dtype=np.int8)


def invariant_complement(c: Code, s: Monomial) -> Code:
    """E = {v in C : all cycle sums and all fixed coordinates vanish},
    the unique sigma-invariant complement of the fixed code."""
    if not is_automorphism(c, s):
        raise ValueError("sigma is not an automorphism of the code")
    cycles, _ = s.perm_cycles()
    support = [i for cyc in cycles for i in cyc]
    if np.any(s.signs[support] != 1):
        raise ValueError("monomial part nontrivial on cycle support; normalize first")
    h = gf3.kernel(c.gen) if c.k < c.n else np.zeros((0, c.n), dtype=np.int8)
    return Code(gf3.kernel(np.vstack([h, _cycle_constraints(s)])), n=c.n)


def project_fixed(c_sigma: Code, s: Monomial, p: int):
    """Squash each p-cycle of the fixed code to one coordinate.

    Returns (projected_code, weights) where weights is the vector
    (p,...,p,1,...,1) mod 3 making the projection self-dual whenever the
    ambient code is (cycle coordinates first, then fixed points, both in
    increasing order of least element).
    """
    ct = cycle_type(s, p)
    cycles, fixed = s.perm_cycles()
    cols = [cyc[0] for cyc in cycles] + fixed
    gen = c_sigma.gen
    for cyc in cycles:
        if np.any(gen[:, cyc] != gen[:, [cyc[0]]]):
            raise ValueError("input code is not constant on the cycles")
    weights = np.array([p % 3] * ct.t + [1] * ct.f, dtype=np.int8)
    return Code(gen[:, cols]), weights


def idempotent_components(c: Code, s: Monomial, fs: FactorSet):
    """[Ce_0, ..., Ce_m] for the primitive idempotents e_i = e~_i(sigma);
    Ce_0 is the fixed code and the direct sum is C."""
    from .polyfield import primitive_idempotents

    if s.order() != fs.p:
        raise ValueError("monomial order does not match the factor set prime")
    m = s.matrix()
    comps = []
    for idem in primitive_idempotents(fs):
        e = poly_eval_matrix(idem, m)
        comps.append(Code(gf3.mmul(c.gen, e), n=c.n))
    return comps


def involution_type(s: Monomial) -> InvolutionType:
    if not s.compose(s).is_identity():
        raise ValueError("sigma^2 is not the identity")
    if np.all(s.perm == np.arange(s.n)):
        raise ValueError("sigma is +-identity (trivial permutational part)")
    cycles, fixed = s.perm_cycles()
    assert all(len(c) == 2 for c in cycles)
    a = int(np.sum(s.signs[fixed] == 2))
    f = int(np.sum(s.signs[fixed] == 1))
    return InvolutionType(t=len(cycles), a=a, f=f)


def normalize_monomial(s: Monomial, p: int):
    """Conjugator tau (diagonal) and tau sigma tau^-1 with trivial
    monomial part; requires odd prime order p (so p does not divide
    |GF(3)*| = 2)."""
    if p == 2:
        raise ValueError("p divides |F*| = 2; no sign normalization exists")
    if s.order() != p:
        raise ValueError(f"monomial does not have order {p}")
    d = np.ones(s.n, dtype=np.int8)
    cycles, fixed = s.perm_cycles()
    for cyc in cycles:
        for i in cyc:  # d[perm[i]] = s_i * d_i, starting from d[cyc[0]] = 1
            j = int(s.perm[i])
            if j != cyc[0]:
                d[j] = (int(s.signs[i]) * int(d[i])) % 3
    tau = Monomial(np.arange(s.n), d)
    s_norm = tau.compose(s).compose(tau.inverse())
    if np.any(s_norm.signs != 1):
        raise ValueError("sign transport failed; monomial order is not exactly p")
    return tau, s_norm


def griesmer_ok(n: int, k: int, d: int) -> bool:
    """Griesmer bound over GF(3): an [n, k, d] code needs
    n >= sum_{i<k} ceil(d / 3^i)."""
    need, q = 0, 1
    for _ in range(k):
        need += -(-d // q)
        q *= 3
    return n >= need


def feasible_cycle_type(p: int, t: int, f: int, n: int = 48,
                        d: int = 15) -> bool:
    """Arithmetic feasibility of cycle type (t, f) for a prime-order
    automorphism p >= 5 of a self-dual [n, n/2, d] code.

    Only table-free exclusions are applied; together they leave exactly
    (47, 1, 1), (23, 2, 2) and (11, 4, 4) when n = 48, d = 15:

    - p*t + f = n and t >= 1;
    - t + f even (the fixed code has dimension (t+f)/2);
    - t*p >= d (E is a nonzero code of length t*p and distance >= d);
    - t >= f whenever f <= d (a nonzero word of K*, the fixed-code
      kernel of the cycle projection, lives in f < d coordinates);
    - K* is an [f, (f-t)/2, >= d] code when f > t: Griesmer bound;
    - if t = f < d, the cycle projection of the fixed code is onto, so
      the code has a word of weight between p and p + f: need p+f >= d;
    - if ord_p(3) is even the components of E are Hermitian self-dual
      codes of length t over GF(3^ord), forcing t even.
    """
    import sympy

    if p * t + f != n or t < 1 or f < 0:
        return False
    if (t + f) % 2:
        return False
    if t * p < d:
        return False
    if f <= d and t < f:
        return False
    if f > t and not griesmer_ok(f, (f - t) // 2, d):
        return False
    if t == f and f < d and p + f < d:
        return False
    if sympy.n_order(3, p) % 2 == 0 and t % 2:
        return False
    return True


# ---------------------------------------------------------------------------
# text format: line 1 "perm: i0 i1 ...", line 2 "signs: +-+..."

def write_monomial(s: Monomial, f) -> None:
    if isinstance(f, (str, bytes)):
        with open(f, "w") as fh:
            write_monomial(s, fh)
        return
    f.write("perm: " + " ".join(str(int(i)) for i in s.perm) + "\n")
    f.write("signs: " + "".join("+" if x == 1 else "-" for x in s.signs) + "\n")


def read_monomial(f) -> Monomial:
    if isinstance(f, (str, bytes)):
        with open(f) as fh:
            return read_monomial(fh)
    lines = [ln.rstrip("\n") for ln in f]
    if len(lines) < 2 or not lines[0].startswith("perm: ") or not lines[1].startswith("signs: "):
        raise ValueError("malformed monomial file")
    perm = [int(x) for x in lines[0][len("perm: "):].split()]
    sign_str = lines[1][len("signs: "):]
    if set(sign_str) - set("+-") or len(sign_str) != len(perm):
        raise ValueError("malformed sign line")
    signs = [1 if ch == "+" else 2 for ch in sign_str]
    return Monomial(np.array(perm), np.array(signs, dtype=np.int8))
