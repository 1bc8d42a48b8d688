"""Acceptance suite: one test (and one printed PASS/FAIL line) per
criterion.  Criteria 4 and 5 run the full p = 23 and p = 11
classification searches and dominate the runtime (tens of minutes
each); criterion 9 is a stretch check, enabled by setting
TERNARY48_STRETCH=1.  The p = 11 exhaustive-mode audit (a, b, c over
all 242 nonzero field elements instead of the 11 orbit
representatives) is documented in the README and not CI-gated.
"""

import os

import numpy as np
import pytest

from ternary48.autom import (
    Monomial,
    cycle_type,
    feasible_cycle_type,
    fixed_code,
    invariant_complement,
    project_fixed,
)
from ternary48.codes import Code, all_codewords, weight_enumerator
from ternary48.gf3 import dot_weighted
from ternary48.constructions import (
    p48,
    p48_multiplier_automorphism,
    p48_translation_automorphism,
    q48,
    q48_shift_automorphism,
)
from ternary48.equiv import are_equivalent, automorphism_group_order
from ternary48.mindist import min_distance
from ternary48.polyfield import (
    factor_xp_minus_1,
    padd,
    pmod,
    pmul,
    primitive_idempotents,
    xpm1,
)

rng = np.random.default_rng(4815)


def _line(n, ok, msg):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {msg}")
    assert ok, f"criterion {n}: {msg}"


def test_criterion_1_golden_distances():
    results = []
    for name, c in (("Q48", q48()), ("P48", p48())):
        results.append((name, c.is_self_dual(), min_distance(c)))
    ok = all(sd and d == 15 for _, sd, d in results)
    _line(1, ok, f"Q48/P48 self-dual with d = 15: {results}")


def test_criterion_2_weight_enumerator_11_5():
    fs = factor_xp_minus_1(11)
    gen = pmul(fs.factors[0], fs.factors[1])  # (x - 1) * g
    rows = np.array([np.roll(np.r_[gen, np.zeros(4, dtype=np.int8)], i)
                     for i in range(5)])
    a = weight_enumerator(Code(rows))
    got = (int(a[0]), int(a[6]), int(a[9]))
    _line(2, got == (1, 132, 110) and int(a.sum()) == 3**5,
          f"[11,5] enumerator (a0, a6, a9) = {got}")


def test_criterion_3_p47_classification():
    from ternary48.classify import search_p47
    r = search_p47()
    labels = [c["label"] for c in r.classes]
    _line(3, labels == ["Q48"],
          f"p=47 search: {len(r.survivors)} survivors, classes {labels}")


def test_criterion_4_p23_classification():
    from ternary48.classify import search_p23
    r = search_p23()
    labels = [c["label"] for c in r.classes]
    ok = labels == ["P48", "Q48"] and r.candidates_after_symmetry == 7702
    _line(4, ok, f"p=23 search over {r.candidates_after_symmetry} "
                 f"candidates: classes {labels} "
                 f"({r.timings.get('total_s')}s)")


def test_criterion_5_p11_classification():
    from ternary48.classify import search_p11
    r = search_p11()
    labels = [c["label"] for c in r.classes]
    _line(5, labels == ["P48"],
          f"p=11 search over {r.candidates_after_symmetry} candidates: "
          f"classes {labels} ({r.timings.get('total_s')}s); "
          "exhaustive audit documented, not CI-gated")


def test_criterion_6_structure_suite():
    from sympy import primerange
    cases = [
        (q48(), q48_shift_automorphism(), 47, 1, 1),
        (p48(), p48_translation_automorphism(), 23, 2, 2),
        (p48(), p48_multiplier_automorphism(), 11, 4, 4),
    ]
    checks = []
    for c, s, p, t, f in cases:
        ct = cycle_type(s, p)
        checks.append((ct.t, ct.f) == (t, f))
        fc = fixed_code(c, s)
        checks.append(fc.k == (t + f) // 2)
        e = invariant_complement(c, s)
        checks.append(e.k == t * (p - 1) // 2)
        proj, weights = project_fixed(fc, s, p)
        # weighted self-duality of the projected fixed code
        for x in proj.gen:
            for y in proj.gen:
                checks.append(dot_weighted(x, y, weights) == 0)
    # feasibility predicates cover the excluded primes
    feas = [(p, t, 48 - p * t) for p in primerange(5, 48)
            for t in range(1, 48 // p + 1)
            if feasible_cycle_type(p, t, 48 - p * t)]
    checks.append(feas == [(11, 4, 4), (23, 2, 2), (47, 1, 1)])
    # Remark "lendC": t >= f whenever f <= d holds on all feasible data
    checks.append(all(t >= f for _, t, f in feas if f <= 15))
    _line(6, all(checks),
          f"structure suite: {sum(checks)}/{len(checks)} checks")


@pytest.mark.parametrize("p", [11, 23, 47])
def test_criterion_7_idempotent_identities(p):
    fs = factor_xp_minus_1(p)
    idems = primitive_idempotents(fs)
    modulus = xpm1(p)
    ok = True
    total = np.zeros(0, dtype=np.int8)
    for i, e in enumerate(idems):
        ok &= np.array_equal(pmod(pmul(e, e), modulus), e)
        for j in range(i):
            ok &= len(pmod(pmul(e, idems[j]), modulus)) == 0
        total = padd(total, e)
    ok &= np.array_equal(total, [1])
    _line(7, bool(ok), f"p={p}: {len(idems)} primitive idempotents, "
                       "e_i^2 = e_i, e_i e_j = 0, sum = 1")


def _naive_min_distance(c):
    best = c.n + 1
    for words in all_codewords(c.gen):
        w = np.count_nonzero(words, axis=1)
        nz = w > 0
        if np.any(nz):
            best = min(best, int(w[nz].min()))
    return best


def test_criterion_8_oracle_equivalence():
    # exact distance vs naive enumeration on 200 random codes, k <= 10
    for _ in range(200):
        while True:
            k = int(rng.integers(1, 11))
            n = int(rng.integers(k, 21))
            c = Code(rng.integers(0, 3, size=(k, n)))
            if c.k >= 1:
                break
        assert min_distance(c) == _naive_min_distance(c)
    # verified transporters on 100 scrambled self-pairs
    for _ in range(100):
        while True:
            k = int(rng.integers(2, 7))
            n = int(rng.integers(2 * k, 15))
            c = Code(rng.integers(0, 3, size=(k, n)))
            if c.k == k:
                break
        mono = Monomial(rng.permutation(c.n), rng.integers(1, 3, size=c.n))
        c2 = Code(mono.apply(c.gen))
        cert = are_equivalent(c, c2)
        assert cert.equivalent and cert.check(c, c2)
    # the two references are never equated
    cert = are_equivalent(q48(), p48())
    _line(8, not cert.equivalent,
          "200 distance oracles, 100 verified transporters, "
          f"Q48 ~ P48 -> {cert.equivalent} ({cert.detail})")


@pytest.mark.skipif(not os.environ.get("TERNARY48_STRETCH"),
                    reason="stretch criterion; set TERNARY48_STRETCH=1")
def test_criterion_9_automorphism_group_orders():
    oq = automorphism_group_order(q48())
    op = automorphism_group_order(p48())
    _line(9, (oq, op) == (103776, 48576),
          f"|Mon(Q48)| = {oq}, |Mon(P48)| = {op}")
