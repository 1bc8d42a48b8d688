"""Monomial equivalence of ternary codes.

Two codes are equivalent when a signed permutation of coordinates maps
one onto the other.  The test builds, for each code, a colored
incidence structure on signed coordinates and signed minimum-weight
codewords, refines vertex colors to a stable partition, and searches
for a color-preserving isomorphism by individualization and
backtracking.  Any map found is verified on the generator matrix
before it is returned, so a positive answer always comes with a
checked transporter; a negative answer means the search space was
exhausted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf3
from .autom import Monomial
from .codes import Code
from .mindist import min_distance, words_up_to_weight

_MIX_A = np.int64(-7046029254386353131)  # odd multipliers for multiset hashing
_MIX_B = np.int64(-4417276706812531889)


def min_weight_invariant(c: Code):
    """(d, number of weight-d codewords counted projectively)."""
    d = min_distance(c)
    words = words_up_to_weight(c, d)
    count = int(np.sum(np.count_nonzero(words, axis=1) == d))
    return d, count


@dataclass(frozen=True)
class EquivCertificate:
    equivalent: bool
    transporter: Monomial | None
    detail: dict

    def check(self, a: Code, b: Code) -> bool:
        """Re-verify: the transporter maps a onto b."""
        if not self.equivalent:
            return self.transporter is None
        img = Code(self.transporter.apply(a.gen), n=b.n)
        return img == b


# ---------------------------------------------------------------------------
# incidence structure
#
# Vertices, per code: 2n signed coordinates (coordinate i gives vertex
# 2i for +1 and 2i+1 for -1), then 2m signed words.  A signed word
# (w, e) is adjacent to signed coordinate (i, s) iff e * w_i == s != 0.
# Negation is an intrinsic symmetry, so each vertex also knows its
# "mate" (the negated copy) and refinement keys include the mate color.

class _Structure:
    def __init__(self, n, words):
        self.n = n
        self.m = len(words)
        nv = 2 * n + 2 * self.m
        self.nv = nv
        mates = np.arange(nv)
        mates ^= 1
        self.mates = mates
        src, dst = [], []
        wi, ci = np.nonzero(words)
        vals = words[wi, ci]
        for e in (0, 1):  # word sign +1 / -1
            wvert = 2 * n + 2 * wi + e
            s = vals if e == 0 else (3 - vals) % 3
            cvert = 2 * ci + (s == 2)
            src.append(wvert)
            dst.append(cvert)
            src.append(cvert)
            dst.append(wvert)
        src = np.concatenate(src)
        dst = np.concatenate(dst)
        order = np.argsort(src, kind="stable")
        src, dst = src[order], dst[order]
        self.indptr = np.searchsorted(src, np.arange(nv + 1))
        self.adj = dst.astype(np.int64)
        # initial colors: coordinates 0, words grouped by weight
        colors = np.zeros(nv, dtype=np.int64)
        if self.m:
            w = np.count_nonzero(words, axis=1)
            ranks = np.searchsorted(np.unique(w), w)
            colors[2 * n :] = 1 + np.repeat(ranks, 2)
        self.colors0 = colors


def _joint(sa: _Structure, sb: _Structure):
    """Disjoint union; side array marks B vertices."""
    off = sa.nv
    indptr = np.concatenate([sa.indptr, sa.indptr[-1] + sb.indptr[1:]])
    adj = np.concatenate([sa.adj, sb.adj + off])
    mates = np.concatenate([sa.mates, sb.mates + off])
    colors = np.concatenate([sa.colors0, sb.colors0])
    side = np.zeros(sa.nv + sb.nv, dtype=bool)
    side[off:] = True
    return indptr, adj, mates, colors, side


def _mix(x):
    h = (x + np.int64(1)) * _MIX_A
    return (h ^ (h >> np.int64(31))) * _MIX_B


def _refine(colors, indptr, adj, mates, side):
    """Stable partition refinement.  Returns refined colors, or None as
    soon as some color class has unequal A/B vertex counts (then no
    isomorphism respecting the coloring exists)."""
    colors = colors.copy()
    ncolors = len(np.unique(colors))
    lens = np.diff(indptr)
    while True:
        h = _mix(colors)
        sums = np.add.reduceat(h[adj], indptr[:-1], dtype=np.int64)
        sums[lens == 0] = 0
        keys = np.stack([colors, colors[mates], sums])
        order = np.lexsort(keys)
        sk = keys[:, order]
        new_block = np.empty(len(colors), dtype=bool)
        new_block[0] = True
        new_block[1:] = np.any(sk[:, 1:] != sk[:, :-1], axis=0)
        new = np.empty(len(colors), dtype=np.int64)
        new[order] = np.cumsum(new_block) - 1
        nnew = int(new.max()) + 1
        # balance check: each color must be split evenly across sides
        per = np.bincount(2 * new + side, minlength=2 * nnew)
        if np.any(per[0::2] != per[1::2]):
            return None
        if nnew == ncolors:
            return new
        colors, ncolors = new, nnew


def _coord_map(colors, a_nv, n):
    """Pair A coordinate vertices with the equal-colored B coordinate
    vertices.  Returns (perm, signs) or None if the pairing is not a
    signed permutation."""
    ca = colors[: 2 * n]
    cb = colors[a_nv : a_nv + 2 * n]
    order_a = np.argsort(ca, kind="stable")
    order_b = np.argsort(cb, kind="stable")
    if np.any(ca[order_a] != cb[order_b]):
        return None
    perm = np.empty(n, dtype=np.int64)
    signs = np.empty(n, dtype=np.int8)
    seen = np.zeros(n, dtype=bool)
    for va, vb in zip(order_a, order_b):
        i, sa = divmod(int(va), 2)
        j, sb = divmod(int(vb), 2)
        sign = 1 if sa == sb else 2
        if seen[i] and (perm[i] != j or signs[i] != sign):
            return None
        perm[i], signs[i], seen[i] = j, sign, True
    if sorted(perm.tolist()) != list(range(n)):
        return None
    return perm, signs


def pair_profile(words, chunk=256) -> np.ndarray:
    """Joint histogram of (support overlap, |signed inner product|) over
    all ordered pairs of projective words.

    Both statistics are monomial invariants: coordinate signs cancel in
    x_i * y_i, and negating a projective representative flips the inner
    product's sign only.  Unlike any statistic of at most 5 coordinates
    (which the 5-design structure of extremal-code minimum words pins
    down), this profile sees arbitrarily many coordinates at once, so it
    separates codes that pointwise refinement cannot.
    """
    m, n = words.shape
    out = np.zeros((n + 1) * (n + 1), dtype=np.int64)
    if m == 0:
        return out.reshape(n + 1, n + 1)
    x = words.astype(np.float32)
    x[x == 2] = -1
    ax = np.abs(x)
    # each unordered pair once: block rows against tail columns, then
    # remove the double-counted strict lower triangle of the leading
    # square.  Codes stay exact in float32 (< 2**12).
    nc = (n + 1) * (n + 1)
    for lo in range(0, m, chunk):
        hi = min(lo + chunk, m)
        xc, axc = x[lo:hi], ax[lo:hi]
        code = np.abs(xc @ x[lo:].T)
        code += np.float32(n + 1) * (axc @ ax[lo:].T)
        icode = code.astype(np.int16)
        out += np.bincount(icode.ravel(), minlength=nc)[:nc]
        il, jl = np.tril_indices(hi - lo, k=-1)
        out -= np.bincount(icode[il, jl], minlength=nc)[:nc]
    return out.reshape(n + 1, n + 1)


class _IsoSearch:
    def __init__(self, a: Code, b: Code, words_a, words_b):
        self.a, self.b = a, b
        sa = _Structure(a.n, words_a)
        sb = _Structure(b.n, words_b)
        self.a_nv = sa.nv
        self.indptr, self.adj, self.mates, self.colors0, self.side = _joint(sa, sb)

    def _verify(self, colors):
        pm = _coord_map(colors, self.a_nv, self.a.n)
        if pm is None:
            return None
        mono = Monomial(pm[0], pm[1])
        img = mono.apply(self.a.gen)
        if gf3.rank(np.vstack([self.b.gen, img])) != self.b.k:
            return None
        return mono

    def _target_class(self, colors):
        """Smallest color class with more than one A-vertex, preferring
        coordinate classes; None when the A side is discrete."""
        ncol = int(colors.max()) + 1
        for lo, hi in ((0, 2 * self.a.n), (2 * self.a.n, self.a_nv)):
            cc = np.bincount(colors[lo:hi], minlength=ncol)
            cand = np.where(cc > 1)[0]
            if cand.size:
                return int(cand[np.argmin(cc[cand])])
        return None

    def run(self, colors=None, pins=()):
        colors = self.colors0 if colors is None else colors
        if pins:
            colors = colors.copy()
            base = int(colors.max()) + 1
            for off, (va, vb) in enumerate(pins):
                colors[va] = colors[vb] = base + off
        return self._search(colors)

    def _search(self, colors):
        colors = _refine(colors, self.indptr, self.adj, self.mates, self.side)
        if colors is None:
            return None
        target = self._target_class(colors)
        if target is None:
            return self._verify(colors)
        in_class = colors == target
        va = int(np.nonzero(in_class & ~self.side)[0][0])
        bs = np.nonzero(in_class & self.side)[0]
        nxt = int(colors.max()) + 1
        for vb in bs:
            c2 = colors.copy()
            c2[va] = c2[vb] = nxt
            res = self._search(c2)
            if res is not None:
                return res
        return None


def _spanning_words(c: Code, wmax=None):
    """Projective codewords up to the minimum spanning weight (starting
    at the minimum distance); returns (words, wmax)."""
    d = min_distance(c)
    w = d if wmax is None else max(d, wmax)
    for _ in range(6):
        words = words_up_to_weight(c, w)
        if gf3.rank(words) == c.k:
            return words, w
        w += 1
    return words_up_to_weight(c, w), w


def are_equivalent(a: Code, b: Code, words_a=None, words_b=None,
                   wmax=None) -> EquivCertificate:
    """Decide monomial equivalence; certificates carry a verified
    transporter on success.

    ``words_a`` / ``words_b`` may supply precomputed projective word
    lists (all nonzero words of weight <= wmax, one per {v, -v} pair)
    to skip the enumeration; both must then use the same wmax.
    """
    if (a.n, a.k) != (b.n, b.k):
        raise ValueError("codes must share length and dimension")
    detail = {}
    if words_a is None or words_b is None:
        da, ca = min_weight_invariant(a)
        db, cb = min_weight_invariant(b)
        detail["invariants"] = {"a": (da, ca), "b": (db, cb)}
        if (da, ca) != (db, cb):
            return EquivCertificate(False, None, detail)
        words_a, wa = _spanning_words(a, wmax)
        words_b, wb = _spanning_words(b, wmax)
        if wa != wb:
            w = max(wa, wb)
            words_a = words_up_to_weight(a, w)
            words_b = words_up_to_weight(b, w)
    if len(words_a) != len(words_b):
        return EquivCertificate(False, None, detail)
    # pairwise profile: the decisive invariant when the word supports
    # form a design and refinement alone cannot separate the codes
    pa = pair_profile(words_a)
    pb = pair_profile(words_b)
    if not np.array_equal(pa, pb):
        detail["pair_profile"] = "differs"
        return EquivCertificate(False, None, detail)
    search = _IsoSearch(a, b, words_a, words_b)
    mono = search.run()
    if mono is None:
        return EquivCertificate(False, None, detail)
    cert = EquivCertificate(True, mono, detail)
    assert cert.check(a, b)
    return cert


# ---------------------------------------------------------------------------
# equivalence constrained by known prime-order automorphisms
#
# If a ~ b via some monomial g, then g sigma_a g^-1 is an order-p
# element of Mon(b); when the Sylow p-subgroup of Mon(b) is cyclic of
# order p (true for all reference codes here), it is conjugate into
# <sigma_b>, so some equivalence tau satisfies
# tau sigma_a tau^-1 = sigma_b^j.  Searching only such tau is then
# complete, and the search space is tiny: a cycle assignment, one
# offset and sign per cycle, and a fixed-point matching.

def _orbit_cycles(perm, p):
    n = len(perm)
    seen = np.zeros(n, dtype=bool)
    cycles, fixed = [], []
    for i in range(n):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = int(perm[i])
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = int(perm[j])
        (fixed if len(cyc) == 1 else cycles).append(cyc if len(cyc) > 1 else i)
    if any(len(c) != p for c in cycles):
        raise ValueError("permutation is not of p-cycle/fixed type")
    return cycles, fixed


def conjugate_equivalence(a: Code, sa: Monomial, b: Code, sb: Monomial,
                          p: int) -> Monomial | None:
    """A verified transporter tau: a -> b with tau sa tau^-1 in <sb>,
    or None when no such tau exists.

    sa and sb must be order-p automorphisms of a and b with equal cycle
    type.  Completeness for plain equivalence additionally needs every
    order-p subgroup of Mon(b) to be conjugate to <sb>.
    """
    from itertools import permutations, product

    from .autom import fixed_code, invariant_complement, normalize_monomial

    if (a.n, a.k) != (b.n, b.k):
        raise ValueError("codes must share length and dimension")
    ta, sa_n = normalize_monomial(sa, p)
    tb, sb_n = normalize_monomial(sb, p)
    an = Code(ta.apply(a.gen), n=a.n)
    bn = Code(tb.apply(b.gen), n=b.n)
    ca, fa = _orbit_cycles(sa_n.perm, p)
    cb, fb = _orbit_cycles(sb_n.perm, p)
    t, f = len(ca), len(fa)
    if (t, f) != (len(cb), len(fb)):
        return None
    gen_b = bn.gen.astype(np.int64)
    piv = np.argmax(bn.gen != 0, axis=1)

    def residual(v):  # rows of v lie in bn iff their residual vanishes
        v = np.atleast_2d(v).astype(np.int64)
        return (v - v[:, piv] @ gen_b) % 3

    frows = fixed_code(an, sa_n).gen
    erows = invariant_complement(an, sa_n).gen
    # per-cycle constants of the fixed rows and their block subvectors
    fconst = np.stack([[int(r[cyc[0]]) for cyc in ca] for r in frows]) \
        if t else np.zeros((len(frows), 0), dtype=np.int64)
    ffix = frows[:, fa].astype(np.int64) if f else \
        np.zeros((len(frows), 0), dtype=np.int64)
    eblocks = [[r[cyc] for cyc in ca] for r in erows]  # p-vectors per block

    sign_opts = np.array(list(product((1, 2), repeat=t + f)), dtype=np.int64)

    for j in range(1, p):
        # B cycles reordered as orbits of sb^j
        cbj = [np.array(cyc, dtype=np.int64)[(np.arange(p) * j) % p]
               for cyc in cb]
        r_ones = residual(np.stack(
            [np.bincount(cyc, minlength=a.n) for cyc in cbj])) \
            if t else np.zeros((0, a.n), dtype=np.int64)
        r_unit = residual(np.eye(a.n, dtype=np.int64)[fb]) if f else \
            np.zeros((0, a.n), dtype=np.int64)
        for pi in permutations(range(t)):
            for phi in permutations(range(f)):
                # stage 1: fixed rows depend only on the signs
                base_c = fconst[:, None, :] * sign_opts[None, :, :t]
                base_f = ffix[:, None, :] * sign_opts[None, :, t:]
                res = (np.einsum("rsk,kn->rsn", base_c % 3,
                                 r_ones[list(pi)], optimize=True)
                       + np.einsum("rsm,mn->rsn", base_f % 3,
                                   r_unit[list(phi)], optimize=True)) % 3
                ok = ~np.any(res, axis=(0, 2))
                for signs in sign_opts[ok]:
                    tau = _offsets_search(
                        an, bn, residual, ca, cbj, fa, fb, pi, phi, signs,
                        eblocks, p, t)
                    if tau is None:
                        continue
                    full = tb.inverse().compose(tau).compose(ta)
                    img = Code(full.apply(a.gen), n=b.n)
                    if img == b:
                        return full
    return None


def _offsets_search(an, bn, residual, ca, cbj, fa, fb, pi, phi, signs,
                    eblocks, p, t):
    """Resolve the per-cycle offsets by meet-in-the-middle on the
    residuals of the first complement rows, then verify candidates."""
    if t == 0:
        return _assemble_tau(an, bn, ca, cbj, fa, fb, pi, phi, signs, (), p)
    # residuals of each block of each probe row at every offset
    nrows = min(len(eblocks), 2 if t <= 2 else 3)
    lp = []  # lp[r][k]: (p, n) residuals
    for r in range(nrows):
        per_block = []
        for k in range(t):
            w = eblocks[r][k].astype(np.int64) * int(signs[k])
            mats = np.zeros((p, an.n), dtype=np.int64)
            for o in range(p):
                mats[o, cbj[pi[k]]] = np.roll(w, o)
            per_block.append(residual(mats % 3))
        lp.append(per_block)
    half = max(t // 2, 1)

    def fold(mats):
        # index encodes the offsets of the folded blocks, last block in
        # the least significant base-p digit
        acc = np.zeros((1, an.n), dtype=np.int64)
        for m in mats:
            acc = (acc[:, None, :] + m[None, :, :]).reshape(-1, an.n) % 3
        return acc

    def decode(idx, count):
        offs = []
        for _ in range(count):
            offs.append(idx % p)
            idx //= p
        return offs[::-1]

    sols = None
    for r in range(nrows):
        lsum = fold(lp[r][:half])
        rsum = fold(lp[r][half:])
        by_key: dict = {}
        for i, rv in enumerate((-rsum) % 3):
            by_key.setdefault(rv.tobytes(), []).append(i)
        cand = set()
        for li, lv in enumerate(lsum):
            for ri in by_key.get(lv.tobytes(), ()):
                cand.add(tuple(decode(li, half) + decode(ri, t - half)))
        sols = cand if sols is None else (sols & cand)
        if not sols:
            return None
    for offs in sorted(sols):
        tau = _assemble_tau(an, bn, ca, cbj, fa, fb, pi, phi, signs, offs, p)
        if tau is not None:
            return tau
    return None


def _assemble_tau(an, bn, ca, cbj, fa, fb, pi, phi, signs, offs, p):
    perm = np.empty(an.n, dtype=np.int64)
    sgn = np.ones(an.n, dtype=np.int8)
    for k, cyc in enumerate(ca):
        target = cbj[pi[k]]
        o = offs[k] if k < len(offs) else 0
        for i, src in enumerate(cyc):
            perm[src] = target[(i + o) % p]
            sgn[src] = signs[k]
    for m, src in enumerate(fa):
        perm[src] = fb[phi[m]]
        sgn[src] = signs[len(ca) + m]
    tau = Monomial(perm, sgn)
    img = Code(tau.apply(an.gen), n=bn.n)
    return tau if img == bn else None


def automorphism_group_order(c: Code, words=None) -> int:
    """|Aut(C)| among monomial transformations, -identity included,
    by orbit counting along a stabilizer chain of the refinement."""
    if words is None:
        words, _ = _spanning_words(c)
    search = _IsoSearch(c, c, words, words)
    off = search.a_nv
    pins = []
    order = 1
    colors = search.colors0.copy()
    while True:
        refined = _refine(colors, search.indptr, search.adj, search.mates,
                          search.side)
        assert refined is not None
        target = search._target_class(refined)
        if target is None:
            break
        in_class = refined == target
        va = int(np.nonzero(in_class & ~search.side)[0][0])
        bs = np.nonzero(in_class & search.side)[0]
        orbit = 0
        for vb in bs:
            if int(vb) == va + off:
                orbit += 1  # identity always extends
                continue
            if search.run(pins=pins + [(va, int(vb))]) is not None:
                orbit += 1
        order *= orbit
        pins.append((va, va + off))
        base = int(colors.max()) + 1
        colors[va] = colors[va + off] = base
    return order
