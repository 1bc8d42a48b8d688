"""Constructions of self-dual ternary codes of length 48 (and the small
reference codes used to test them).

Two families of known extremal [48, 24, 15] codes:

* ``extended_qr(47)`` -- the extended quadratic residue code Q48,
* ``pless_symmetry(23)`` -- the Pless symmetry code P48,

plus the parametrized assemblies ``assemble_p23`` / ``assemble_p11``
that build every self-dual length-48 code with a given prime-order
automorphism from its fixed part and a splice of two dually-paired
cyclic codes.  The splice parameters live in GF(3^d) realized as
polynomial residues mod the minimal polynomial of the coordinate shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf3
from .autom import Monomial
from .codes import Code
from .polyfield import (CyclicBasis, ExtElem, FactorSet, cyclic_basis,
                        dual_basis, factor_xp_minus_1, pmul,
                        poly_eval_matrix)


def legendre_chi(q: int) -> np.ndarray:
    """chi[r] = quadratic residue character of r mod q, as 0/1/2."""
    chi = np.zeros(q, dtype=np.int8)
    for r in range(1, q):
        chi[r] = 1 if pow(r, (q - 1) // 2, q) == 1 else 2
    return chi


def _primitive_root(q: int) -> int:
    for g in range(2, q):
        seen, v = set(), 1
        for _ in range(q - 1):
            v = v * g % q
            seen.add(v)
        if len(seen) == q - 1:
            return g
    raise ValueError(f"no primitive root mod {q}")


# ---------------------------------------------------------------------------
# extended quadratic residue codes

@lru_cache(maxsize=None)
def extended_qr(p: int) -> Code:
    """Extended quadratic residue code of length p + 1 for p in {23, 47}.

    Built as the span of the even-weight cyclic subcode (generator
    polynomial (x - 1) * g with g irreducible of degree (p - 1)/2) and
    the all-ones vector; self-dual of dimension (p + 1)/2.
    """
    if p not in (23, 47):
        raise ValueError("extended QR construction supported for p in {23, 47}")
    fs = factor_xp_minus_1(p)
    gen_poly = pmul([2, 1], fs.factors[1])
    cb = cyclic_basis(p, gen_poly)
    rows = np.zeros((cb.basis.shape[0] + 1, p + 1), dtype=np.int8)
    rows[:-1, :p] = cb.basis
    rows[-1] = 1
    c = Code(rows)
    assert c.k == (p + 1) // 2 and c.is_self_dual()
    return c


def q48() -> Code:
    return extended_qr(47)


# ---------------------------------------------------------------------------
# Pless symmetry codes

def _pless_s_matrix(q: int) -> np.ndarray:
    """(q+1) x (q+1) matrix over GF(3) with S @ S.T == -I.

    Rows and columns are indexed by the projective line over GF(q):
    position 0 is the point at infinity, position 1 + r is the residue
    r.  The body is the quadratic residue character of the column minus
    the row; the border signs are fixed by trying the sign conventions
    in a deterministic order and taking the first that works.
    """
    chi = legendre_chi(q)
    r, c = np.arange(q), np.arange(q)
    body = chi[(c[None, :] - r[:, None]) % q]
    for border_row in (1, 2):
        for border_col in (1, 2):
            s = np.zeros((q + 1, q + 1), dtype=np.int8)
            s[0, 1:] = border_row
            s[1:, 0] = border_col
            s[1:, 1:] = body
            if np.array_equal(gf3.mmul(s, s.T), (-np.eye(q + 1)) % 3):
                return s
    raise AssertionError("no border sign convention gives S S^T = -I")


@lru_cache(maxsize=None)
def pless_symmetry(q: int) -> Code:
    """Pless symmetry code (I | S) of length 2(q + 1) for q in {11, 23}."""
    if q not in (11, 23):
        raise ValueError("Pless symmetry construction supported for q in {11, 23}")
    s = _pless_s_matrix(q)
    c = Code(np.hstack([np.eye(q + 1, dtype=np.int8), s]))
    assert c.is_self_dual()
    return c


def p48() -> Code:
    return pless_symmetry(23)


# ---------------------------------------------------------------------------
# extended ternary Golay code

@lru_cache(maxsize=None)
def golay12() -> Code:
    """The [12, 6, 6] extended ternary Golay code: the perfect [11, 6]
    cyclic code with a parity coordinate making all weights multiples
    of 3."""
    fs = factor_xp_minus_1(11)
    cb = cyclic_basis(11, fs.factors[1])
    rows = np.zeros((6, 12), dtype=np.int8)
    rows[:, :11] = cb.basis
    rows[:, 11] = (-cb.basis.sum(axis=1, dtype=np.int64)) % 3
    c = Code(rows)
    assert c.is_self_dual()
    return c


# ---------------------------------------------------------------------------
# splice assemblies for codes with an automorphism of prime order p,
# p in {11, 23}, acting with t cycles and f = 48 - p*t fixed points

@dataclass(frozen=True)
class Assembly:
    """Shared context: the two dually-paired cyclic codes of length p.

    cb1 spans the even-weight part of the g-side cyclic code; its rows
    are the shifts x^i * (x-1)g, so coefficient vectors w.r.t. cb1 are
    literally polynomials and the shift acts as multiplication by x.
    cb2 is the dual basis of the h-side code (cb1.basis @ cb2.basis.T
    is the identity).  word_basis2 re-expresses the h-side code on the
    shifts of cb2's first row, which restores the "coefficients are
    polynomials" property there as well.
    """

    p: int
    fs: FactorSet
    cb1: CyclicBasis
    cb2: CyclicBasis
    word_basis2: np.ndarray

    @property
    def modulus(self) -> np.ndarray:
        """Modulus for splice parameters: GF(3^d) as F_3[x]/(min poly
        of the shift on the g-side code)."""
        return self.cb1.min_poly


@lru_cache(maxsize=None)
def assembly(p: int) -> Assembly:
    if p not in (11, 23):
        raise ValueError("assembly contexts exist for p in {11, 23}")
    fs = factor_xp_minus_1(p)
    cb1 = cyclic_basis(p, pmul([2, 1], fs.factors[1]))
    cb2 = dual_basis(cb1, pmul([2, 1], fs.factors[2]))
    wb2 = np.vstack([np.roll(cb2.basis[0], i) for i in range(cb2.basis.shape[0])])
    assert gf3.rank(wb2) == cb2.basis.shape[0]
    return Assembly(p=p, fs=fs, cb1=cb1, cb2=cb2, word_basis2=wb2)


def splice_param(p: int, coeffs) -> ExtElem:
    """Convenience: the splice-field element with the given polynomial
    coefficients (lowest degree first)."""
    return ExtElem(assembly(p).modulus, coeffs)


def _check_param(ctx: Assembly, t: ExtElem, name="t"):
    if not np.array_equal(t.modulus, ctx.modulus):
        raise ValueError(f"{name} has the wrong modulus for p = {ctx.p}")


def assemble_p23(t: ExtElem, ctx: Assembly | None = None) -> Code:
    """Self-dual [48, 24] code with an order-23 automorphism of cycle
    type (2, 2): two length-23 blocks spliced by the nonzero field
    parameter t, plus the two-dimensional fixed part.

    Coordinates: block 1 (0..22), block 2 (23..45), fixed (46, 47).
    """
    ctx = ctx or assembly(23)
    _check_param(ctx, t)
    if t.is_zero():
        raise ValueError("splice parameter t must be nonzero")
    g1, g2 = ctx.cb1.basis, ctx.cb2.basis
    tm = poly_eval_matrix(t.rep, ctx.cb1.z_action)
    um = (-gf3.inv(tm).astype(np.int64)) % 3  # -t^{-1} acting on the g-side
    d = g1.shape[0]
    rows = np.zeros((2 + 2 * d, 48), dtype=np.int8)
    rows[0, 0:23] = 1
    rows[0, 46] = 1
    rows[1, 23:46] = 1
    rows[1, 47] = 1
    rows[2 : 2 + d, 0:23] = g1
    rows[2 : 2 + d, 23:46] = gf3.mmul(tm, g1)
    rows[2 + d :, 0:23] = g2
    rows[2 + d :, 23:46] = gf3.mmul(um.astype(np.int8).T, g2)
    c = Code(rows)
    assert c.k == 24 and c.is_self_dual()
    return c


# fixed-coordinate signs for the cycle-type (4, 4) assembly; rows are
# pairwise orthogonal over the integers and have squared norm 4
R0 = np.array(
    [[1, 1, 1, 1],
     [1, 1, 2, 2],
     [1, 2, 1, 2],
     [1, 2, 2, 1]], dtype=np.int8)


def assemble_p11(a: ExtElem, b: ExtElem, c: ExtElem, d: ExtElem,
                 ctx: Assembly | None = None) -> Code:
    """Self-dual [48, 24] code with an order-11 automorphism of cycle
    type (4, 4): four length-11 blocks spliced by the field matrix
    A = [[a, b], [c, d]] (det must be nonzero), plus the fixed part G0.

    Coordinates: blocks at 0..10, 11..21, 22..32, 33..43, fixed 44..47.
    The g-side rows carry the coefficient matrix (I | A); the h-side
    rows carry (I | A'') with A'' = -A^{-T}, which is exactly the
    condition making the two splices orthogonal.
    """
    ctx = ctx or assembly(11)
    for name, e in (("a", a), ("b", b), ("c", c), ("d", d)):
        _check_param(ctx, e, name)
    det = a * d - b * c
    if det.is_zero():
        raise ValueError("splice matrix is singular (ad - bc = 0)")
    di = det.inverse()
    app, bpp = -(d * di), c * di
    cpp, dpp = b * di, -(a * di)
    g1, g2 = ctx.cb1.basis, ctx.cb2.basis
    z1 = ctx.cb1.z_action
    one = ExtElem(ctx.modulus, [1])
    zero = ExtElem(ctx.modulus, [])
    coef1 = [[one, zero, a, b], [zero, one, c, d]]
    coef2 = [[one, zero, app, bpp], [zero, one, cpp, dpp]]
    dd = g1.shape[0]
    rows = np.zeros((4 + 4 * dd, 48), dtype=np.int8)
    for i in range(4):
        rows[i, 11 * i : 11 * (i + 1)] = 1
        rows[i, 44:] = R0[i]
    for i in range(2):
        for j in range(4):
            m = poly_eval_matrix(coef1[i][j].rep, z1)
            rows[4 + dd * i : 4 + dd * (i + 1), 11 * j : 11 * (j + 1)] = \
                gf3.mmul(m, g1)
            m2 = poly_eval_matrix(coef2[i][j].rep, z1)
            rows[4 + dd * (2 + i) : 4 + dd * (3 + i), 11 * j : 11 * (j + 1)] = \
                gf3.mmul(m2.T, g2)
    out = Code(rows)
    assert out.k == 24 and out.is_self_dual()
    return out


def block_shift_monomial(p: int, blocks: int, fixed: int) -> Monomial:
    """The order-p monomial shifting each of the leading length-p
    blocks cyclically and fixing the trailing coordinates."""
    n = p * blocks + fixed
    perm = np.arange(n)
    for b in range(blocks):
        idx = np.arange(p * b, p * (b + 1))
        perm[idx] = np.roll(idx, -1)  # i -> i+1 within the block
    return Monomial(perm, np.ones(n, dtype=np.int8))


# ---------------------------------------------------------------------------
# distinguished automorphisms of the two reference codes

def q48_shift_automorphism() -> Monomial:
    """Order-47 automorphism of Q48 (cycle type (1, 1)): the cyclic
    shift on the 47 residue coordinates, fixing the extension."""
    return block_shift_monomial(47, 1, 1)


def q48_multiplier_automorphism() -> Monomial:
    """Order-23 automorphism of Q48 (cycle type (2, 2)): multiplication
    by a square of order 23 in GF(47)* on the residue coordinates,
    fixing 0 and the extension."""
    m = _primitive_root(47) ** 2 % 47
    perm = np.arange(48)
    perm[:47] = (m * np.arange(47)) % 47
    return Monomial(perm, np.ones(48, dtype=np.int8))


def p48_translation_automorphism() -> Monomial:
    """Order-23 automorphism of P48 (cycle type (2, 2)): translation
    r -> r + 1 on both projective-line halves, fixing both infinities."""
    perm = np.arange(48)
    for half in (0, 24):
        res = half + 1 + np.arange(23)
        perm[res] = half + 1 + (np.arange(23) + 1) % 23
    return Monomial(perm, np.ones(48, dtype=np.int8))


def p48_multiplier_automorphism() -> Monomial:
    """Order-11 automorphism of P48 (cycle type (4, 4)): multiplication
    by a square of order 11 in GF(23)* on both halves, fixing the two
    infinities and the two zeros."""
    m = _primitive_root(23) ** 2 % 23
    perm = np.arange(48)
    for half in (0, 24):
        res = half + 1 + np.arange(23)
        perm[res] = half + 1 + (m * np.arange(23)) % 23
    return Monomial(perm, np.ones(48, dtype=np.int8))
