import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternary48 import gf3
from ternary48.polyfield import (
    ExtElem,
    cyclic_basis,
    dual_basis,
    embed,
    ext_one,
    ext_x,
    ext_zero,
    factor_xp_minus_1,
    padd,
    pdeg,
    pdivmod,
    pmod,
    pmul,
    poly_eval_matrix,
    primitive_idempotents,
    psub,
    ptrim,
    pxgcd,
    xpm1,
)

polys = st.lists(st.integers(0, 2), min_size=0, max_size=9).map(
    lambda c: np.array(c, dtype=np.int8))

# degrees of the nontrivial factors: ord_p(3)
ORD3 = {11: 5, 13: 3, 23: 11, 47: 23}


def cyclotomic_cosets(p):
    """Independent oracle for the factor degrees of x^p - 1 over GF(3)."""
    left = set(range(p))
    cosets = []
    while left:
        s = min(left)
        coset = set()
        while s not in coset:
            coset.add(s)
            s = (3 * s) % p
        cosets.append(sorted(coset))
        left -= coset
    return cosets


def test_ptrim_and_degree():
    assert pdeg([]) == -1
    assert pdeg([0, 0]) == -1
    assert pdeg([1, 0, 2, 0]) == 2
    assert np.array_equal(ptrim([4, -1, 0]), [1, 2])


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_ring_axioms(a, b):
    assert np.array_equal(padd(a, b), padd(b, a))
    assert np.array_equal(pmul(a, b), pmul(b, a))
    assert np.array_equal(psub(padd(a, b), b), ptrim(a))
    if pdeg(a) >= 0 and pdeg(b) >= 0:
        assert pdeg(pmul(a, b)) == pdeg(a) + pdeg(b)


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_division_invariant(a, b):
    if pdeg(b) < 0:
        with pytest.raises(ZeroDivisionError):
            pdivmod(a, b)
        return
    q, r = pdivmod(a, b)
    assert pdeg(r) < pdeg(b) or pdeg(r) < 0
    assert np.array_equal(padd(pmul(q, b), r), ptrim(a))


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_xgcd_bezout(a, b):
    g, u, v = pxgcd(a, b)
    assert np.array_equal(padd(pmul(u, a), pmul(v, b)), g)
    if pdeg(g) >= 0:
        assert g[-1] == 1  # monic
        assert not len(pmod(a, g)) and not len(pmod(b, g))


def test_poly_eval_matrix_companion():
    m = np.array([[0, 1], [1, 1]], dtype=np.int8)
    # x^2 = x + 1 for this companion matrix, so x^2 - x - 1 kills it
    assert not np.any(poly_eval_matrix([2, 2, 1], m))
    assert np.array_equal(poly_eval_matrix([1], m), np.eye(2, dtype=np.int8))


@pytest.mark.parametrize("p", [11, 13, 23, 47])
def test_factorization_matches_cyclotomic_cosets(p):
    fs = factor_xp_minus_1(p)
    cosets = cyclotomic_cosets(p)
    assert sorted(pdeg(f) for f in fs.factors) == sorted(
        len(c) for c in cosets)
    assert fs.common_degree == ORD3[p]
    assert np.array_equal(fs.factors[0], [2, 1])  # x - 1 first
    prod = np.array([1], dtype=np.int8)
    for f in fs.factors:
        prod = pmul(prod, f)
    assert np.array_equal(prod, xpm1(p))
    # the two big factors are reciprocal to each other (p = 11, 23, 47)
    if len(fs.factors) == 3:
        g, h = fs.factors[1], fs.factors[2]
        rec = ptrim((g[::-1].astype(np.int64) * pow(int(g[0]), -1, 3)) % 3)
        assert np.array_equal(rec, h)


def test_factorization_rejects_bad_input():
    with pytest.raises(ValueError):
        factor_xp_minus_1(9)
    with pytest.raises(ValueError):
        factor_xp_minus_1(3)


@pytest.mark.parametrize("p", [11, 23])
def test_primitive_idempotents_identities(p):
    fs = factor_xp_minus_1(p)
    idems = primitive_idempotents(fs)
    modulus = xpm1(p)
    total = np.zeros(0, dtype=np.int8)
    for i, e in enumerate(idems):
        assert np.array_equal(pmod(pmul(e, e), modulus), e)  # e^2 = e
        for j in range(i):
            assert not len(pmod(pmul(e, idems[j]), modulus))  # orthogonal
        total = padd(total, e)
    assert np.array_equal(total, [1])  # sum to 1


@pytest.mark.parametrize("p", [11, 23])
def test_cyclic_basis_shift_action(p):
    fs = factor_xp_minus_1(p)
    gen = pmul(fs.factors[0], fs.factors[1])  # (x-1) g
    cb = cyclic_basis(p, gen)
    d = p - pdeg(gen)
    assert cb.basis.shape == (d, p)
    assert gf3.rank(cb.basis) == d
    shifted = np.roll(cb.basis, 1, axis=1)
    assert np.array_equal(gf3.mmul(cb.z_action, cb.basis), shifted)
    # the shift matrix satisfies its minimal polynomial, of full degree
    assert pdeg(cb.min_poly) == d
    assert not np.any(poly_eval_matrix(cb.min_poly, cb.z_action))


def test_cyclic_basis_rejects_non_divisor():
    with pytest.raises(ValueError):
        cyclic_basis(11, [1, 1])


@pytest.mark.parametrize("p", [11, 23])
def test_dual_basis_pairing(p):
    fs = factor_xp_minus_1(p)
    cb1 = cyclic_basis(p, pmul(fs.factors[0], fs.factors[1]))
    cb2 = dual_basis(cb1, pmul(fs.factors[0], fs.factors[2]))
    d = cb1.basis.shape[0]
    assert np.array_equal(gf3.mmul(cb1.basis, cb2.basis.T),
                          np.eye(d, dtype=np.int8))
    # the two shift actions are mutually inverse transposes
    assert np.array_equal(gf3.mmul(cb1.z_action, cb2.z_action.T),
                          np.eye(d, dtype=np.int8))


def test_dual_basis_degenerate_pairing():
    fs = factor_xp_minus_1(11)
    cb1 = cyclic_basis(11, pmul(fs.factors[0], fs.factors[1]))
    with pytest.raises(ValueError):
        dual_basis(cb1, pmul(fs.factors[0], fs.factors[1]))


def test_ext_elem_field_axioms():
    fs = factor_xp_minus_1(11)
    cb = cyclic_basis(11, pmul(fs.factors[0], fs.factors[1]))
    mod = cb.min_poly
    x = ext_x(mod)
    one = ext_one(mod)
    assert x ** (3**5 - 1) == one  # multiplicative order divides q - 1
    a = x**7 + one
    assert a * a.inverse() == one
    assert a - a == ext_zero(mod)
    assert (-a) + a == ext_zero(mod)
    with pytest.raises(ZeroDivisionError):
        ext_zero(mod).inverse()
    with pytest.raises(ValueError):
        a + ExtElem([1, 1], [1])


def test_embed_is_field_action():
    fs = factor_xp_minus_1(11)
    cb = cyclic_basis(11, pmul(fs.factors[0], fs.factors[1]))
    mod = cb.min_poly
    x = ext_x(mod)
    a, b = x**3 + ext_one(mod), x**9
    # embedding is additive and multiplicative: embed(ab) rows lie in the
    # code and equal poly(a) @ embed(b)
    ea, eb, eab = embed(a, cb), embed(b, cb), embed(a * b, cb)
    assert np.array_equal(
        padd_rows(ea, eb), embed(a + b, cb))
    assert np.array_equal(
        gf3.mmul(poly_eval_matrix(a.rep, cb.z_action), eb), eab)
    with pytest.raises(ValueError):
        embed(ExtElem([1, 0, 1], [1]), cb)


def padd_rows(a, b):
    return ((a.astype(np.int64) + b) % 3).astype(np.int8)
