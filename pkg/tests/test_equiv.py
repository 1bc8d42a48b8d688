import numpy as np
import pytest

from ternary48.autom import Monomial
from ternary48.codes import Code, orthogonal_sum
from ternary48.constructions import golay12
from ternary48.equiv import (
    are_equivalent,
    automorphism_group_order,
    conjugate_equivalence,
    min_weight_invariant,
    pair_profile,
)

rng = np.random.default_rng(404)


def random_code(max_k=6, max_n=14):
    while True:
        k = int(rng.integers(2, max_k + 1))
        n = int(rng.integers(2 * k, max_n + 1))
        c = Code(rng.integers(0, 3, size=(k, n)))
        if c.k == k:
            return c


def scramble(c: Code):
    mono = Monomial(rng.permutation(c.n), rng.integers(1, 3, size=c.n))
    return Code(mono.apply(c.gen)), mono


def test_min_weight_invariant():
    g = golay12()
    assert min_weight_invariant(g) == (6, 132)


def test_pair_profile_is_monomial_invariant():
    for _ in range(10):
        c = random_code()
        from ternary48.mindist import words_up_to_weight
        w = words_up_to_weight(c, c.n)
        c2, mono = scramble(c)
        w2 = words_up_to_weight(c2, c2.n)
        assert np.array_equal(pair_profile(w), pair_profile(w2))


def test_scrambled_pairs_equivalent_with_verified_transporter():
    for _ in range(20):
        c = random_code()
        c2, _ = scramble(c)
        cert = are_equivalent(c, c2)
        assert cert.equivalent
        assert cert.check(c, c2)
        img = Code(cert.transporter.apply(c.gen), n=c2.n)
        assert img == c2


def test_inequivalent_codes():
    # different minimum distance
    a = Code([[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1]])
    b = Code([[1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 1, 1]])
    cert = are_equivalent(a, b)
    assert not cert.equivalent and cert.transporter is None
    assert cert.check(a, b)
    # same (d, count) can still be inequivalent; decided by search
    c = orthogonal_sum([Code([[1, 1]])] * 3)
    d = Code([[1, 1, 0, 0, 1, 1], [0, 0, 1, 1, 1, 2]])
    if min_weight_invariant(c) == min_weight_invariant(d):
        assert not are_equivalent(c, d).equivalent


def test_equivalence_requires_matching_parameters():
    with pytest.raises(ValueError):
        are_equivalent(Code([[1, 0]]), Code([[1, 0, 0]]))


def test_self_equivalence():
    g = golay12()
    cert = are_equivalent(g, g)
    assert cert.equivalent and cert.check(g, g)


def test_conjugate_equivalence_scrambled_references():
    from ternary48.constructions import (
        p48,
        p48_multiplier_automorphism,
        p48_translation_automorphism,
        q48,
        q48_multiplier_automorphism,
        q48_shift_automorphism,
    )
    from ternary48.autom import is_automorphism

    cases = [
        (q48(), q48_shift_automorphism(), 47),
        (q48(), q48_multiplier_automorphism(), 23),
        (p48(), p48_translation_automorphism(), 23),
        (p48(), p48_multiplier_automorphism(), 11),
    ]
    for code, sig, p in cases:
        b, mono = scramble(code)
        sb = mono.compose(sig).compose(mono.inverse())
        assert is_automorphism(b, sb)
        tau = conjugate_equivalence(code, sig, b, sb, p)
        assert tau is not None
        assert Code(tau.apply(code.gen), n=48) == b


def test_conjugate_equivalence_separates_q48_p48():
    from ternary48.constructions import (
        p48,
        p48_translation_automorphism,
        q48,
        q48_multiplier_automorphism,
    )

    # complete for <sigma>-conjugate transporters; with the Sylow
    # 23-subgroups of both groups cyclic of order 23, None here proves
    # inequivalence
    tau = conjugate_equivalence(q48(), q48_multiplier_automorphism(),
                                p48(), p48_translation_automorphism(), 23)
    assert tau is None


def test_automorphism_group_order_small():
    # the repetition code [2,1] {00, 11, 22}: monomials (i j) x signs
    # preserving it: diag(s, s) and swap o diag(s, s), order 4
    c = Code([[1, 1]])
    assert automorphism_group_order(c) == 4
    # orthogonal sum of two copies: wreath-type group, order 4^2 * 2
    c2 = orthogonal_sum([c, c])
    assert automorphism_group_order(c2) == 32


def test_automorphism_group_order_golay12():
    # 2.M12: |Aut| = 190080 among signed permutations
    assert automorphism_group_order(golay12()) == 190080
