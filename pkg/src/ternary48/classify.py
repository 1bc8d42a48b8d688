"""Classification searches for extremal self-dual [48, 24, 15] ternary
codes with an automorphism of prime order p in {11, 23, 47}.

Each search runs over a symmetry-reduced parameter grid for the
corresponding splice assembly, eliminates parameters whose code has a
word of weight < 15, and sorts the survivors into equivalence classes
against the two reference codes Q48 and P48.

The minimum-distance filter never enumerates all 3^24 codewords.  A
word of an assembled code decomposes along the length-p blocks, and
each block content splits uniquely as lambda*1 + (g-side word) +
(h-side word); the splice parameters link the block components through
field multiplications, so a word of weight <= W forces some block (or
block pair) of weight <= W/2 (or <= W/2 combined), and all such light
block contents can be enumerated once and checked per candidate with
table lookups.  Early stages use small weight budgets to kill most
candidates cheaply; the final stage is a complete sweep (or an
independent branch-and-bound distance proof) for the few survivors.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field

import numpy as np
import sympy

from . import gf3
from .autom import feasible_cycle_type
from .codes import Code
from .constructions import (R0, assemble_p11, assemble_p23, assembly,
                            block_shift_monomial, extended_qr,
                            pless_symmetry)
from .equiv import are_equivalent
from .mindist import verify_min_distance_at_least, words_up_to_weight
from .polyfield import ExtElem, ext_x, pdeg, poly_eval_matrix, ptrim

EXTREMAL_D = 15


# ---------------------------------------------------------------------------
# vectorized GF(3^d) arithmetic on packed indices

class FieldTables:
    """GF(3^d) = F_3[x]/(modulus) with elements packed as base-3
    integers (coefficient of x^i at digit i); exp/log tables make
    multiplication on whole index arrays cheap."""

    def __init__(self, modulus):
        modulus = ptrim(modulus)
        d = pdeg(modulus)
        q = 3**d
        self.modulus, self.d, self.q = modulus, d, q
        self.pow3 = 3 ** np.arange(d, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        coeffs = np.empty((q, d), dtype=np.int8)
        rem = idx.copy()
        for i in range(d):
            coeffs[:, i] = rem % 3
            rem //= 3
        self.coeffs = coeffs
        self.neg = ((3 - coeffs) % 3 @ self.pow3).astype(np.int64)
        gamma = self._find_primitive()
        gm = poly_eval_matrix(gamma.rep, self._x_matrix())
        exp = np.zeros((q - 1, d), dtype=np.int8)
        exp[0, 0] = 1
        m, gpow = 1, gm
        while m < q - 1:
            step = min(m, q - 1 - m)
            exp[m : m + step] = gf3.mmul(exp[:step], gpow)
            gpow = gf3.mmul(gpow, gpow)
            m += step
        self.exp = (exp.astype(np.int64) @ self.pow3).astype(np.int64)
        log = np.full(q, -1, dtype=np.int64)
        log[self.exp] = np.arange(q - 1)
        assert log[0] == -1 and not np.any(log[1:] < 0), "element missed: not primitive"
        self.log = log
        self.add_table = None
        if q <= 2048:
            s = (coeffs[:, None, :] + coeffs[None, :, :]) % 3
            self.add_table = (s.astype(np.int64) @ self.pow3).reshape(q * q)

    def _x_matrix(self):
        d = self.d
        xm = np.zeros((d, d), dtype=np.int8)
        xm[: d - 1, 1:] = np.eye(d - 1, dtype=np.int8)
        xm[d - 1] = (-(self.modulus[:d].astype(np.int64))) % 3  # modulus is monic
        return xm

    def _find_primitive(self) -> ExtElem:
        primes = list(sympy.factorint(self.q - 1))
        for i in range(2, self.q):
            cand = self.elem_of(i)
            if all((cand ** ((self.q - 1) // r)).rep.tolist() != [1] for r in primes):
                return cand
        raise AssertionError("no primitive element found")

    def idx_of(self, e: ExtElem) -> int:
        assert np.array_equal(e.modulus, self.modulus)
        rep = np.zeros(self.d, dtype=np.int64)
        rep[: len(e.rep)] = e.rep
        return int(rep @ self.pow3)

    def elem_of(self, i: int) -> ExtElem:
        return ExtElem(self.modulus, self.coeffs[i])

    def mul(self, i, j):
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        out = self.exp[(self.log[i] + self.log[j]) % (self.q - 1)]
        return np.where((i == 0) | (j == 0), 0, out)

    def inv(self, i):
        i = np.asarray(i, dtype=np.int64)
        if np.any(i == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(-self.log[i]) % (self.q - 1)]

    def add(self, i, j):
        if self.add_table is not None:
            return self.add_table[np.asarray(i, dtype=np.int64) * self.q + j]
        c = (self.coeffs[i].astype(np.int64) + self.coeffs[j]) % 3
        return c @ self.pow3

    def sub(self, i, j):
        return self.add(i, self.neg[j])

    def order_of(self, i: int) -> int:
        from math import gcd
        return (self.q - 1) // gcd(int(self.log[i]), self.q - 1)


def conj_table(tab1: FieldTables, tab2: FieldTables) -> np.ndarray:
    """Index table of the isomorphism GF(3^d) -> GF(3^d) sending the
    class of x mod m1 to the class of x^{-1} mod m2 (m2 must be the
    reciprocal of m1, so that the map is well defined)."""
    xinv = ext_x(tab2.modulus).inverse()
    # m1 evaluated at xinv must vanish in F_3[x]/m2
    acc = ExtElem(tab2.modulus, [])
    pw = ExtElem(tab2.modulus, [1])
    for c in tab1.modulus:
        if c:
            acc = acc + ExtElem(tab2.modulus, (int(c) * pw.rep.astype(np.int64)) % 3)
        pw = pw * xinv
    assert acc.is_zero(), "moduli are not reciprocal-paired"
    rows = np.zeros((tab1.d, tab2.d), dtype=np.int8)
    pw = ExtElem(tab2.modulus, [1])
    for i in range(tab1.d):
        rows[i, : len(pw.rep)] = pw.rep
        pw = pw * xinv
    return ((tab1.coeffs.astype(np.int64) @ rows.astype(np.int64)) % 3
            @ tab2.pow3).astype(np.int64)


def orbit_reps(generator: ExtElem):
    """One representative per orbit of the nonzero field elements under
    multiplication by the cyclic group generated by ``generator``; the
    representative is the lexicographically least coefficient sequence
    (lowest degree first).  Returned sorted by that same key."""
    if generator.is_zero():
        raise ValueError("generator must be nonzero")
    tab = FieldTables(generator.modulus)
    reps, _ = _orbit_reps_idx(tab, tab.idx_of(generator))
    return [tab.elem_of(int(i)) for i in reps]


def _orbit_reps_idx(tab: FieldTables, gidx: int):
    q = tab.q
    lg = int(tab.log[gidx])
    m = tab.order_of(gidx)
    h_logs = np.sort(np.array([(k * lg) % (q - 1) for k in range(m)], dtype=np.int64))
    revkey = (tab.coeffs.astype(np.int64) @ tab.pow3[::-1])
    visited = np.zeros(q - 1, dtype=bool)
    reps = []
    for l in range(q - 1):
        if visited[l]:
            continue
        orb_logs = (l + h_logs) % (q - 1)
        visited[orb_logs] = True
        orb = tab.exp[orb_logs]
        reps.append(int(orb[np.argmin(revkey[orb])]))
    reps.sort(key=lambda i: int(revkey[i]))
    return np.array(reps, dtype=np.int64), m


# ---------------------------------------------------------------------------
# light block-content patterns
#
# A pattern records the decomposition of one length-p block content x:
# x = lam * ones + (g-side word with field index u) + (h-side word with
# field index v).  Lists are projective (first nonzero entry of x is 1)
# and grouped by weight.

def _sign_patterns(w):
    if w == 0:
        return np.zeros((1, 0), dtype=np.int8)
    m = 1 << (w - 1)
    bits = (np.arange(m, dtype=np.int64)[:, None] >> np.arange(w - 1)) & 1
    out = np.ones((m, w), dtype=np.int8)
    out[:, 1:] += bits.astype(np.int8)
    return out


class _PatternSet:
    def __init__(self, minv, d1, d2, pow1, pow2):
        self.minv = gf3.asgf3(minv)
        self.n = self.minv.shape[0]
        self.d1, self.d2 = d1, d2
        self.pow1, self.pow2 = pow1, pow2
        self._cache = {}

    def at(self, w):
        """(lam, u, v) int64 arrays for all projective patterns of
        weight exactly w."""
        if w in self._cache:
            return self._cache[w]
        if w == 0:
            out = (np.zeros(1, np.int64), np.zeros(1, np.int64), np.zeros(1, np.int64))
            self._cache[0] = out
            return out
        signs = _sign_patterns(w).astype(np.float32)
        lam, uu, vv = [], [], []
        combos = np.array(list(itertools.combinations(range(self.n), w)),
                          dtype=np.int64)
        for lo in range(0, len(combos), 4096):
            rows = self.minv[combos[lo : lo + 4096]].astype(np.float32)
            dec = np.rint(signs @ rows).astype(np.int64) % 3
            dec = dec.reshape(-1, self.n)
            lam.append(dec[:, 0].copy())
            uu.append(dec[:, 1 : 1 + self.d1] @ self.pow1)
            vv.append(dec[:, 1 + self.d1 :] @ self.pow2)
        out = (np.concatenate(lam), np.concatenate(uu), np.concatenate(vv))
        self._cache[w] = out
        return out


# ---------------------------------------------------------------------------
# shared search report

@dataclass
class SearchReport:
    search_id: str
    params: dict
    candidates_total: int
    candidates_after_symmetry: int
    survivors: list = field(default_factory=list)
    classes: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    codes: dict = field(default_factory=dict, repr=False)  # gen_hash -> Code

    def to_json(self, include_timings=False) -> str:
        """Deterministic report; identical bytes across runs and worker
        counts unless timings are included."""
        data = {
            "search_id": self.search_id,
            "params": self.params,
            "candidates_total": self.candidates_total,
            "candidates_after_symmetry": self.candidates_after_symmetry,
            "survivors": self.survivors,
            "classes": self.classes,
        }
        if include_timings:
            data["timings"] = self.timings
        return json.dumps(data, indent=2, sort_keys=True)


def _reference_anchors(p):
    """References that can contain an order-p automorphism, each with a
    distinguished one of the cycle type the search produces.  A
    reference whose monomial automorphism group has order coprime to p
    cannot be equivalent to any survivor and is omitted: equivalence
    transports automorphisms."""
    from .constructions import (p48_multiplier_automorphism,
                                p48_translation_automorphism,
                                q48_multiplier_automorphism,
                                q48_shift_automorphism)

    # |Mon(Q48)| = 2^5*3*23*47 and |Mon(P48)| = 2^6*3*11*23, so each
    # admits p only as listed, and the Sylow p-subgroups are cyclic of
    # order p: the sigma-constrained search against them is complete.
    if p == 47:
        return [("Q48", extended_qr(47), q48_shift_automorphism())]
    if p == 23:
        return [("Q48", extended_qr(47), q48_multiplier_automorphism()),
                ("P48", pless_symmetry(23), p48_translation_automorphism())]
    if p == 11:
        return [("P48", pless_symmetry(23), p48_multiplier_automorphism())]
    raise ValueError(f"no reference anchors for p = {p}")


def _classify_survivors(codes, sigma, p, words_by_hash=None):
    """Group distinct survivor codes into classes labeled Q48 / P48 /
    UNKNOWN by verified equivalence against the references.

    Every survivor carries the known order-p automorphism ``sigma``
    (the block shift of its assembly), so the comparison against each
    reference runs the sigma-constrained search, which is complete here
    because the Sylow p-subgroups of the reference groups are cyclic of
    order p."""
    from .equiv import conjugate_equivalence

    refs = _reference_anchors(p)
    classes = []
    reps = []  # (code, words, label)
    assignment = {}
    for h, c in codes.items():
        label = None
        for lab, ref, ref_sigma in refs:
            tau = conjugate_equivalence(c, sigma, ref, ref_sigma, p)
            if tau is not None:
                label = lab
                break
        if label is None:
            # not a reference: compare against earlier unknowns, first
            # by the cheap constrained search, then by the generic one
            words = None if words_by_hash is None else words_by_hash.get(h)
            if words is None:
                words = words_up_to_weight(c, EXTREMAL_D)
            for rc, rw, rlab in reps:
                if not rlab.startswith("UNKNOWN"):
                    continue
                if conjugate_equivalence(c, sigma, rc, sigma, p) is not None \
                        or are_equivalent(c, rc, words_a=words,
                                          words_b=rw).equivalent:
                    label = rlab
                    break
            if label is None:
                label = f"UNKNOWN-{sum(1 for r in reps if r[2].startswith('UNKNOWN'))}"
                reps.append((c, words, label))
        elif label not in {r[2] for r in reps}:
            reps.append((c, None, label))
        assignment[h] = label
    for c, _, label in reps:
        members = sorted(h for h, lab in assignment.items() if lab == label)
        classes.append({"label": label, "representative": c.gen_hash(),
                        "members": members})
    classes.sort(key=lambda d: d["label"])
    return classes, assignment


# ---------------------------------------------------------------------------
# p = 47: cycle type (1, 1); the candidates are the two extended cyclic
# codes built from the two degree-23 factors

def search_p47(verify=True) -> SearchReport:
    from .polyfield import cyclic_basis, factor_xp_minus_1, pmul

    assert feasible_cycle_type(47, 1, 1)
    t0 = time.time()
    fs = factor_xp_minus_1(47)
    candidates = []
    for gidx in (1, 2):
        cb = cyclic_basis(47, pmul([2, 1], fs.factors[gidx]))
        rows = np.zeros((24, 48), dtype=np.int8)
        rows[:23, :47] = cb.basis
        rows[23] = 1
        c = Code(rows)
        assert c.is_self_dual()
        candidates.append((f"factor-{gidx}", c))
    report = SearchReport(
        search_id="p47",
        params={"p": 47, "cycle_type": [1, 1], "d": EXTREMAL_D},
        candidates_total=len(candidates),
        candidates_after_symmetry=len(candidates),
    )
    codes = {}
    for name, c in candidates:
        ok, wit = (True, None)
        if verify:
            ok, wit = verify_min_distance_at_least(c, EXTREMAL_D)
        if ok:
            h = c.gen_hash()
            codes[h] = c
            report.survivors.append({"param": name, "gen_hash": h})
    report.timings["filter_s"] = round(time.time() - t0, 2)
    t1 = time.time()
    classes, _ = _classify_survivors(codes, block_shift_monomial(47, 1, 1), 47)
    report.classes = classes
    report.codes = codes
    report.timings["classify_s"] = round(time.time() - t1, 2)
    return report


# ---------------------------------------------------------------------------
# p = 23: cycle type (2, 2); candidates are orbit representatives of
# the splice parameter t under the shift subgroup <x>

class _Splice23:
    def __init__(self):
        self.ctx = assembly(23)
        self.tab1 = FieldTables(self.ctx.cb1.min_poly)
        self.tab2 = FieldTables(self.ctx.cb2.min_poly)
        self.conj = conj_table(self.tab1, self.tab2)
        self.w1 = gf3.mmul(self.tab1.coeffs, self.ctx.cb1.basis)
        self.w2 = gf3.mmul(self.tab2.coeffs, self.ctx.word_basis2)
        m = np.vstack([np.ones(23, dtype=np.int8),
                       self.ctx.cb1.basis, self.ctx.word_basis2])
        self.pats = _PatternSet(gf3.inv(m), self.tab1.d, self.tab2.d,
                                self.tab1.pow3, self.tab2.pow3)

    def multiplier2(self, tidx: int) -> int:
        """h-side linkage: block2 = (field2) w * block1 with
        w = -conj(t)^{-1}."""
        return int(self.tab2.neg[self.tab2.inv(self.conj[tidx])])


def _sweep23(sp: _Splice23, tidx: int, budget: int, collect=False,
             chunk=1 << 21):
    """Scan all words of assemble_p23(t) whose lighter block has weight
    <= budget.  Filter mode returns True iff some nonzero word has
    weight < 15 (early exit).  Collect mode returns all words of weight
    <= 15 (complete for budget >= 7)."""
    widx = sp.multiplier2(tidx)
    t1, t2 = sp.tab1, sp.tab2
    pairs = [(tidx, widx, False), (int(t1.inv(tidx)), int(t2.inv(widx)), True)]
    out = []
    for w in range(0 if collect else 1, budget + 1):
        lam, uu, vv = sp.pats.at(w)
        for mt, mw, swapped in pairs:
            if w == 0 and swapped:
                continue  # the zero pattern is direction-symmetric
            for lo in range(0, len(lam), chunk):
                lam_c = lam[lo : lo + chunk]
                u2 = t1.mul(uu[lo : lo + chunk], mt)
                v2 = t2.mul(vv[lo : lo + chunk], mw)
                y = (sp.w1[u2] + sp.w2[v2]) % 3
                c0 = np.count_nonzero(y == 0, axis=1)
                c1 = np.count_nonzero(y == 1, axis=1)
                c2 = 23 - c0 - c1
                base = w + (lam_c != 0)
                for mu, cm in ((0, c0), (1, c2), (2, c1)):
                    tot = base + (23 - cm) + (mu != 0)
                    if not collect:
                        if np.any((tot > 0) & (tot < EXTREMAL_D)):
                            return True
                    else:
                        keep = (tot > 0) & (tot <= EXTREMAL_D)
                        if np.any(keep):
                            blk_pat = (lam_c[keep, None]
                                       + sp.w1[uu[lo : lo + chunk][keep]]
                                       + sp.w2[vv[lo : lo + chunk][keep]]) % 3
                            blk_der = (y[keep] + mu) % 3
                            words = np.empty((int(keep.sum()), 48), dtype=np.int8)
                            b1, b2 = (blk_der, blk_pat) if swapped else (blk_pat, blk_der)
                            f1, f2 = ((mu, lam_c[keep]) if swapped
                                      else (lam_c[keep], mu))
                            words[:, 0:23] = b1
                            words[:, 23:46] = b2
                            words[:, 46] = f1
                            words[:, 47] = f2
                            out.append(words)
    if not collect:
        return False
    if not out:
        return np.zeros((0, 48), dtype=np.int8)
    allw = np.vstack(out)
    first = np.argmax(allw != 0, axis=1)
    lead = allw[np.arange(len(allw)), first]
    allw[lead == 2] = (-allw[lead == 2]) % 3
    return np.unique(allw, axis=0)


def search_p23(stage_budgets=(2, 3, 4), verify=True,
               progress=None) -> SearchReport:
    assert feasible_cycle_type(23, 2, 2)
    t0 = time.time()
    sp = _Splice23()
    xgen = ext_x(sp.tab1.modulus)
    reps, _ = _orbit_reps_idx(sp.tab1, sp.tab1.idx_of(xgen))
    report = SearchReport(
        search_id="p23",
        params={"p": 23, "cycle_type": [2, 2], "d": EXTREMAL_D,
                "stage_budgets": list(stage_budgets)},
        candidates_total=sp.tab1.q - 1,
        candidates_after_symmetry=len(reps),
    )
    alive = reps
    for budget in stage_budgets:
        t1 = time.time()
        alive = np.array([t for t in alive
                          if not _sweep23(sp, int(t), budget)], dtype=np.int64)
        report.timings[f"stage_w{budget}_s"] = round(time.time() - t1, 2)
        report.timings[f"stage_w{budget}_alive"] = int(len(alive))
        if progress:
            progress(f"budget {budget}: {len(alive)} alive")
    # complete proof for the remainder: the lighter block of any word of
    # weight <= 15 has weight <= 7
    t1 = time.time()
    survivors, codes = [], {}
    for t in alive:
        if _sweep23(sp, int(t), 7):
            continue
        c = assemble_p23(sp.tab1.elem_of(int(t)), sp.ctx)
        if verify:
            ok, _ = verify_min_distance_at_least(c, EXTREMAL_D)
            assert ok, "complete sweep disagrees with the distance proof"
        h = c.gen_hash()
        codes.setdefault(h, c)
        survivors.append({"param": sp.tab1.coeffs[int(t)].tolist(), "gen_hash": h})
    report.survivors = survivors
    report.timings["complete_sweep_s"] = round(time.time() - t1, 2)
    t1 = time.time()
    classes, _ = _classify_survivors(codes, block_shift_monomial(23, 2, 2), 23)
    report.classes = classes
    report.codes = codes
    report.timings["classify_s"] = round(time.time() - t1, 2)
    report.timings["total_s"] = round(time.time() - t0, 2)
    return report

# ---------------------------------------------------------------------------
# p = 11: cycle type (4, 4); candidates are splice matrices
# [[a, b], [c, d]] with a, b, c orbit representatives under <-x> and d
# free, det != 0

_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_P3 = (27, 9, 3, 1)


class _Splice11:
    def __init__(self):
        self.ctx = assembly(11)
        self.tab1 = FieldTables(self.ctx.cb1.min_poly)
        self.tab2 = FieldTables(self.ctx.cb2.min_poly)
        self.conj = conj_table(self.tab1, self.tab2)
        self.w1 = gf3.mmul(self.tab1.coeffs, self.ctx.cb1.basis)
        self.w2 = gf3.mmul(self.tab2.coeffs, self.ctx.word_basis2)
        m = np.vstack([np.ones(11, dtype=np.int8),
                       self.ctx.cb1.basis, self.ctx.word_basis2])
        self.pats = _PatternSet(gf3.inv(m), 5, 5,
                                self.tab1.pow3, self.tab2.pow3)
        # per-block weight of lam*1 + w1[u] + w2[v], indexed t5[lam][u*243+v]
        s = (self.w1[:, None, :].astype(np.int16) + self.w2[None, :, :])
        self.t5 = [
            np.count_nonzero((s + lam) % 3, axis=2).astype(np.int8).reshape(-1)
            for lam in range(3)
        ]
        lam4 = np.stack(np.meshgrid(*[np.arange(3)] * 4, indexing="ij"),
                        axis=-1).reshape(-1, 4)
        self.fixw = np.count_nonzero(
            lam4 @ R0.astype(np.int64) % 3, axis=1).astype(np.int8)
        self._full = {}

    def pat_full(self, w):
        """Patterns of weight w including both signs of each vector."""
        if w in self._full:
            return self._full[w]
        lam, u, v = self.pats.at(w)
        if w > 0:
            lam = np.concatenate([lam, (3 - lam) % 3])
            u = np.concatenate([u, self.tab1.neg[u]])
            v = np.concatenate([v, self.tab2.neg[v]])
        self._full[w] = (lam, u, v)
        return self._full[w]

    def rows(self, a, b, c, d):
        """Per-candidate coefficient rows of (I | A) on the g side and
        conj(I | A'') on the h side; entries are index arrays."""
        t1 = self.tab1
        det = t1.sub(t1.mul(a, d), t1.mul(b, c))
        di = t1.inv(det)
        one = np.ones_like(np.asarray(a, dtype=np.int64))
        zero = np.zeros_like(one)
        m0 = (one, zero, np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        m1 = (zero, one, np.asarray(c, dtype=np.int64), np.asarray(d, dtype=np.int64))
        app = t1.neg[t1.mul(d, di)]
        bpp = t1.mul(c, di)
        cpp = t1.mul(b, di)
        dpp = t1.neg[t1.mul(a, di)]
        n0 = (one, zero, self.conj[app], self.conj[bpp])
        n1 = (zero, one, self.conj[cpp], self.conj[dpp])
        return m0, m1, n0, n1


def _solve_pair(tab, m0, m1, i, j, ui, uj):
    """(r, s) with r*row0 + s*row1 agreeing with (ui, uj) at positions
    (i, j); the 2x2 minor must be invertible."""
    a00, a01 = m0[i], m0[j]
    a10, a11 = m1[i], m1[j]
    det = tab.sub(tab.mul(a00, a11), tab.mul(a01, a10))
    di = tab.inv(det)
    r = tab.mul(tab.sub(tab.mul(ui, a11), tab.mul(uj, a10)), di)
    s = tab.mul(tab.sub(tab.mul(uj, a00), tab.mul(ui, a01)), di)
    return r, s


def _eval_pos(tab, m0, m1, r, s, k):
    return tab.add(tab.mul(r, m0[k]), tab.mul(s, m1[k]))


def _grid11(sp: _Splice11, avals, bvals, cvals, dvals):
    """Flat candidate arrays (a, b, c, d) with det != 0."""
    a, b, c, d = [x.reshape(-1) for x in np.meshgrid(
        np.asarray(avals, dtype=np.int64), np.asarray(bvals, dtype=np.int64),
        np.asarray(cvals, dtype=np.int64), np.asarray(dvals, dtype=np.int64),
        indexing="ij")]
    det = sp.tab1.sub(sp.tab1.mul(a, d), sp.tab1.mul(b, c))
    keep = det != 0
    return a[keep], b[keep], c[keep], d[keep]


def _pairs_for(d_idx):
    """Solvable position pairs: when d = 0 the (0,3) minor of (I | A)
    and the (1,2) minor of (I | A'') are singular, so those pairs are
    skipped (a light word seen only there is also seen, for any code,
    through another in-budget pair)."""
    if int(d_idx) == 0:
        return ((0, 1), (0, 2), (1, 3), (2, 3))
    return _PAIRS


def _kill_mask(sp, i, j, k, l, lami, lamj, uk, vk, ul, vl, base, d_thr,
               collector=None, extra=None):
    """Nonzero total weight < d_thr for some free (lam_k, lam_l)."""
    kill = None
    idx_kl = uk * 243 + vk
    idx_ll = ul * 243 + vl
    fbase = lami * _P3[i] + lamj * _P3[j]
    for lk in range(3):
        tk = sp.t5[lk][idx_kl]
        for ll in range(3):
            tot = base + tk + sp.t5[ll][idx_ll] \
                + sp.fixw[fbase + lk * _P3[k] + ll * _P3[l]]
            m = (tot > 0) & (tot < d_thr)
            kill = m if kill is None else (kill | m)
            if collector is not None:
                sel = (tot > 0) & (tot <= collector)
                if np.any(sel):
                    extra.append((lk, ll, sel))
    return kill


def _stage11(sp: _Splice11, cand, budget, d_thr=EXTREMAL_D):
    """Candidate-axis filter: drop candidates with a word of weight
    < d_thr whose two lightest blocks fit in the pattern budget.
    ``cand`` is (a, b, c, d) index arrays; returns the surviving subset."""
    a, b, c, d = cand
    # process d == 0 and d != 0 separately (different solvable pairs)
    out = []
    for degenerate in (False, True):
        mask = (d == 0) if degenerate else (d != 0)
        if not np.any(mask):
            continue
        sub = [x[mask] for x in (a, b, c, d)]
        alive = np.ones(len(sub[0]), dtype=bool)
        pairs = _pairs_for(0) if degenerate else _PAIRS
        m0, m1, n0, n1 = sp.rows(*sub)
        for (i, j) in pairs:
            for wi in range(0, budget + 1):
                li, ui_, vi_ = sp.pats.at(wi)
                for wj in range(0, budget + 1 - wi):
                    lj, uj_, vj_ = sp.pat_full(wj)
                    if wi == 0 and wj == 0:
                        lj, uj_, vj_ = lj[:1], uj_[:1], vj_[:1]
                    for pi in range(len(li)):
                        for pj in range(len(lj)):
                            idx = np.nonzero(alive)[0]
                            if idx.size == 0:
                                break
                            mm0 = tuple(x[idx] for x in m0)
                            mm1 = tuple(x[idx] for x in m1)
                            nn0 = tuple(x[idx] for x in n0)
                            nn1 = tuple(x[idx] for x in n1)
                            r, s = _solve_pair(sp.tab1, mm0, mm1, i, j,
                                               int(ui_[pi]), int(uj_[pj]))
                            rp, sq = _solve_pair(sp.tab2, nn0, nn1, i, j,
                                                 int(vi_[pi]), int(vj_[pj]))
                            k, l = [x for x in range(4) if x not in (i, j)]
                            uk = _eval_pos(sp.tab1, mm0, mm1, r, s, k)
                            ul = _eval_pos(sp.tab1, mm0, mm1, r, s, l)
                            vk = _eval_pos(sp.tab2, nn0, nn1, rp, sq, k)
                            vl = _eval_pos(sp.tab2, nn0, nn1, rp, sq, l)
                            kill = _kill_mask(sp, i, j, k, l,
                                              int(li[pi]), int(lj[pj]),
                                              uk, vk, ul, vl,
                                              wi + wj, d_thr)
                            alive[idx[kill]] = False
        out.append(tuple(x[alive] for x in sub))
    return tuple(np.concatenate([o[t] for o in out]) for t in range(4))


def _sweep11(sp: _Splice11, a, b, c, d, budget=7, d_thr=EXTREMAL_D,
             collect=False, chunk=1 << 19):
    """Pattern-axis scan for one candidate.

    With budget 7 this is a complete check for words of weight < d_thr
    (any such word has two blocks of combined weight <= 7, each <= 4,
    at a solvable position pair); collect mode instead gathers every
    word of weight <= 15, adding the (0, 5) block-split that a
    weight-15 word with blocks (0, 5, 5, 5) needs.
    """
    scal = lambda x: np.asarray([x], dtype=np.int64)
    m0, m1, n0, n1 = sp.rows(scal(a), scal(b), scal(c), scal(d))
    m0, m1, n0, n1 = [tuple(int(x[0]) for x in m) for m in (m0, m1, n0, n1)]
    pairs = _pairs_for(d)
    cut = 4
    weight_pairs = [(wi, wj)
                    for wi in range(0, min(budget, cut) + 1)
                    for wj in range(0, min(budget - wi, cut) + 1)]
    if collect and budget >= 5:
        weight_pairs += [(0, 5), (5, 0)]
    found = []
    for (i, j) in pairs:
        for wi, wj in weight_pairs:
            li, ui_, vi_ = sp.pats.at(wi)
            lj, uj_, vj_ = sp.pat_full(wj)
            if wi == 0 and wj == 0:
                lj, uj_, vj_ = lj[:1], uj_[:1], vj_[:1]
            ni, nj = len(li), len(lj)
            for lo in range(0, ni * nj, chunk):
                hi = min(lo + chunk, ni * nj)
                ii, jj = np.divmod(np.arange(lo, hi, dtype=np.int64), nj)
                lami, lamj = li[ii], lj[jj]
                ui, uj = ui_[ii], uj_[jj]
                vi, vj = vi_[ii], vj_[jj]
                r, s = _solve_pair(sp.tab1, m0, m1, i, j, ui, uj)
                rp, sq = _solve_pair(sp.tab2, n0, n1, i, j, vi, vj)
                k, l = [x for x in range(4) if x not in (i, j)]
                uk = _eval_pos(sp.tab1, m0, m1, r, s, k)
                ul = _eval_pos(sp.tab1, m0, m1, r, s, l)
                vk = _eval_pos(sp.tab2, n0, n1, rp, sq, k)
                vl = _eval_pos(sp.tab2, n0, n1, rp, sq, l)
                if not collect:
                    kill = _kill_mask(sp, i, j, k, l, lami, lamj,
                                      uk, vk, ul, vl, wi + wj, d_thr)
                    if np.any(kill):
                        return True
                else:
                    extra = []
                    _kill_mask(sp, i, j, k, l, lami, lamj,
                               uk, vk, ul, vl, wi + wj, d_thr,
                               collector=EXTREMAL_D, extra=extra)
                    for lk, ll, sel in extra:
                        words = np.zeros((int(sel.sum()), 48), dtype=np.int8)
                        us = (ui[sel], uj[sel], uk[sel], ul[sel])
                        vs = (vi[sel], vj[sel], vk[sel], vl[sel])
                        ls = (lami[sel], lamj[sel], lk, ll)
                        lamfull = np.zeros((len(words), 4), dtype=np.int8)
                        for t, pos in enumerate((i, j, k, l)):
                            blk = (np.asarray(ls[t]).reshape(-1, 1)
                                   + sp.w1[us[t]] + sp.w2[vs[t]]) % 3
                            words[:, 11 * pos : 11 * (pos + 1)] = blk
                            lamfull[:, pos] = ls[t]
                        words[:, 44:] = lamfull @ R0.astype(np.int64) % 3
                        found.append(words)
    if not collect:
        return False
    if not found:
        return np.zeros((0, 48), dtype=np.int8)
    allw = np.vstack(found)
    allw = allw[np.any(allw != 0, axis=1)]
    first = np.argmax(allw != 0, axis=1)
    lead = allw[np.arange(len(allw)), first]
    allw[lead == 2] = (-allw[lead == 2]) % 3
    return np.unique(allw, axis=0)


def search_p11(stage_budgets=(2, 3), sweep_budgets=(4, 5), verify=True,
               exhaustive=False, shard=None, progress=None) -> SearchReport:
    """Classify cycle-type (4, 4) candidates.

    Standard mode takes a, b, c over the 11 orbit representatives of
    <-x> and d over all of GF(3^5).  ``exhaustive`` widens a, b, c to
    all 242 nonzero elements (audit mode; hundreds of times slower);
    ``shard=(s, m)`` then restricts to the s-th of m slices of the
    a-axis for external parallelization.
    """
    assert feasible_cycle_type(11, 4, 4)
    t0 = time.time()
    sp = _Splice11()
    xgen = ext_x(sp.tab1.modulus)
    minus_x = -xgen
    reps, group_order = _orbit_reps_idx(sp.tab1, sp.tab1.idx_of(minus_x))
    nonzero = np.arange(1, sp.tab1.q, dtype=np.int64)
    abc = nonzero if exhaustive else reps
    avals = abc
    if shard is not None:
        s, m = shard
        avals = abc[s::m]
    total_nonsingular = len(nonzero) ** 3 * (sp.tab1.q - 1)
    cand = _grid11(sp, avals, abc, abc, np.arange(sp.tab1.q, dtype=np.int64))
    report = SearchReport(
        search_id="p11",
        params={"p": 11, "cycle_type": [4, 4], "d": EXTREMAL_D,
                "stage_budgets": list(stage_budgets),
                "sweep_budgets": list(sweep_budgets),
                "exhaustive": bool(exhaustive),
                "shard": list(shard) if shard else None},
        candidates_total=total_nonsingular,
        candidates_after_symmetry=len(cand[0]),
    )
    for budget in stage_budgets:
        t1 = time.time()
        cand = _stage11(sp, cand, budget)
        report.timings[f"stage_w{budget}_s"] = round(time.time() - t1, 2)
        report.timings[f"stage_w{budget}_alive"] = int(len(cand[0]))
        if progress:
            progress(f"stage budget {budget}: {len(cand[0])} alive")
    # per-candidate sweeps, escalating pattern budget, then complete
    order = np.lexsort(cand[::-1])
    cands = [tuple(int(x[i]) for x in cand) for i in order]
    for budget in sweep_budgets:
        t1 = time.time()
        cands = [t for t in cands if not _sweep11(sp, *t, budget=budget)]
        report.timings[f"sweep_w{budget}_s"] = round(time.time() - t1, 2)
        report.timings[f"sweep_w{budget}_alive"] = len(cands)
        if progress:
            progress(f"sweep budget {budget}: {len(cands)} alive")
    t1 = time.time()
    survivors, codes = [], {}
    for t in cands:
        a, b, c, d = t
        if d != 0:
            if _sweep11(sp, *t, budget=7):
                continue
        else:
            # singular-minor case: use the branch-and-bound proof instead
            code = _build11(sp, t)
            ok, _ = verify_min_distance_at_least(code, EXTREMAL_D)
            if not ok:
                continue
        code = _build11(sp, t)
        if verify and d != 0:
            ok, _ = verify_min_distance_at_least(code, EXTREMAL_D)
            assert ok, "complete sweep disagrees with the distance proof"
        h = code.gen_hash()
        codes.setdefault(h, code)
        survivors.append({"param": [sp.tab1.coeffs[x].tolist() for x in t],
                          "gen_hash": h})
    report.survivors = survivors
    report.timings["complete_s"] = round(time.time() - t1, 2)
    if progress:
        progress(f"complete: {len(survivors)} survivors, "
                 f"{len(codes)} distinct codes")
    t1 = time.time()
    classes, _ = _classify_survivors(codes, block_shift_monomial(11, 4, 4), 11)
    report.classes = classes
    report.codes = codes
    report.timings["classify_s"] = round(time.time() - t1, 2)
    report.timings["total_s"] = round(time.time() - t0, 2)
    return report


def _build11(sp: _Splice11, t):
    es = [sp.tab1.elem_of(int(x)) for x in t]
    return assemble_p11(*es, sp.ctx)


# ---------------------------------------------------------------------------
# generic staged filter over a component decomposition

def staged_filter(c: Code, components, d=EXTREMAL_D, enum_budget=3**13):
    """Sound fail-fast distance filter from a decomposition of c.

    Stage 1 enumerates each component (when small enough) looking for a
    word of weight < d; stage 2 checks pairwise sums of component words
    for component pairs whose joint enumeration fits the budget; stage
    3 is the complete branch-and-bound proof.  Returns (passed, stage,
    witness); the verdict always equals that of stage 3 alone.
    """
    components = list(components)
    stacked = np.vstack([comp.gen for comp in components])
    if Code(stacked, n=c.n) != c:
        raise ValueError("components do not sum to the code")
    from .codes import all_codewords
    small = []
    for comp in components:
        if comp.k == 0 or 3**comp.k > enum_budget:
            small.append(None)
            continue
        chunks = []
        for words in all_codewords(comp.gen):
            w = np.count_nonzero(words, axis=1)
            bad = (w > 0) & (w < d)
            if np.any(bad):
                return False, "component", words[np.argmax(bad)].copy()
            chunks.append(words)
        small.append(np.vstack(chunks))
    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            if small[i] is None or small[j] is None:
                continue
            if len(small[i]) * len(small[j]) > enum_budget:
                continue
            for lo in range(0, len(small[i]), 256):
                sums = (small[i][lo : lo + 256, None, :].astype(np.int16)
                        + small[j][None, :, :]) % 3
                sums = sums.reshape(-1, c.n)
                w = np.count_nonzero(sums, axis=1)
                bad = (w > 0) & (w < d)
                if np.any(bad):
                    return False, "pair-sum", sums[np.argmax(bad)].astype(np.int8)
    ok, wit = verify_min_distance_at_least(c, d)
    return (True, "complete", None) if ok else (False, "complete", wit)
