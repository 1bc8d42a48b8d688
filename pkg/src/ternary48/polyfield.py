"""Polynomials over GF(3), factorization of x^p - 1, and the companion
extension-field machinery for cyclic codes.

A polynomial is a 1-D int8 array of coefficients, lowest degree first,
with no trailing zeros (the zero polynomial is the empty array).

For an odd prime p != 3, x^p - 1 factors over GF(3) as
(x - 1) * g_1 * ... * g_m with all g_i irreducible of the same degree
d = ord_p(3).  The class of x in GF(3)[x]/(g_i) generates a copy of
GF(3^d); on the cyclic code of length p with generator polynomial
(x - 1) * g the coordinate shift acts as an invertible d x d matrix
whose minimal polynomial is the complementary irreducible factor, and
multiplying basis vectors by polynomials in that matrix realizes the
field action used by the length-48 code assemblies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import sympy

from . import gf3


# ---------------------------------------------------------------------------
# dense polynomial arithmetic mod 3

def ptrim(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64) % 3
    nz = np.nonzero(a)[0]
    if nz.size == 0:
        return np.zeros(0, dtype=np.int8)
    return a[: nz[-1] + 1].astype(np.int8)


def pdeg(a) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(ptrim(a)) - 1


def padd(a, b) -> np.ndarray:
    a, b = ptrim(a), ptrim(b)
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] += b
    return ptrim(out)


def psub(a, b) -> np.ndarray:
    return padd(a, (3 - np.asarray(b, dtype=np.int64)) % 3)


def pmul(a, b) -> np.ndarray:
    a, b = ptrim(a), ptrim(b)
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int8)
    return ptrim(np.convolve(a.astype(np.int64), b.astype(np.int64)) % 3)


def pdivmod(a, b):
    a, b = ptrim(a).astype(np.int64), ptrim(b).astype(np.int64)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return np.zeros(0, dtype=np.int8), ptrim(a)
    inv_lead = pow(int(b[-1]), -1, 3)
    rem = a.copy()
    q = np.zeros(len(a) - len(b) + 1, dtype=np.int64)
    for i in range(len(a) - len(b), -1, -1):
        c = (rem[i + len(b) - 1] * inv_lead) % 3
        if c:
            q[i] = c
            rem[i : i + len(b)] = (rem[i : i + len(b)] - c * b) % 3
    return ptrim(q), ptrim(rem)


def pmod(a, b) -> np.ndarray:
    return pdivmod(a, b)[1]


def pxgcd(a, b):
    """Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = ptrim(a), ptrim(b)
    u0, u1 = np.array([1], dtype=np.int8), np.zeros(0, dtype=np.int8)
    v0, v1 = np.zeros(0, dtype=np.int8), np.array([1], dtype=np.int8)
    while len(r1):
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, psub(u0, pmul(q, u1))
        v0, v1 = v1, psub(v0, pmul(q, v1))
    if len(r0):
        c = pow(int(r0[-1]), -1, 3)
        r0 = ptrim(r0.astype(np.int64) * c)
        u0 = ptrim(u0.astype(np.int64) * c)
        v0 = ptrim(v0.astype(np.int64) * c)
    return r0, u0, v0


def poly_eval_matrix(coeffs, m) -> np.ndarray:
    """Evaluate sum_i coeffs[i] * m**i over GF(3)."""
    coeffs = ptrim(coeffs)
    n = m.shape[0]
    out = np.zeros((n, n), dtype=np.int8)
    power = np.eye(n, dtype=np.int8)
    for i, c in enumerate(coeffs):
        if i:
            power = gf3.mmul(power, m)
        if c:
            out = (out + int(c) * power.astype(np.int64)) % 3
    return out.astype(np.int8)


def xpm1(p) -> np.ndarray:
    """The polynomial x^p - 1."""
    v = np.zeros(p + 1, dtype=np.int8)
    v[0] = 2
    v[p] = 1
    return v


# ---------------------------------------------------------------------------
# factorization of x^p - 1 and primitive idempotents

@dataclass(frozen=True)
class FactorSet:
    p: int
    factors: tuple  # tuple of coefficient arrays; factors[0] == x - 1
    common_degree: int


def _mult_order(a: int, p: int) -> int:
    o, v = 1, a % p
    while v != 1:
        v = (v * a) % p
        o += 1
    return o


def factor_xp_minus_1(p: int) -> FactorSet:
    """Factor x^p - 1 into monic irreducibles over GF(3).

    The (x - 1) factor comes first; the remaining factors are sorted by
    their coefficient sequences so the choice of "g" is deterministic.
    """
    if p < 2 or not sympy.isprime(p):
        raise ValueError(f"p = {p} is not prime")
    if p in (2, 3):
        raise ValueError("p must be an odd prime different from 3")
    x = sympy.Symbol("x")
    _, fl = sympy.Poly(x**p - 1, x, modulus=3).factor_list()
    polys = []
    for f, mult in fl:
        assert mult == 1
        coeffs = [int(c) % 3 for c in reversed(f.all_coeffs())]
        polys.append(ptrim(coeffs))
    xm1 = ptrim([2, 1])
    rest = sorted(
        (f for f in polys if not np.array_equal(f, xm1)),
        key=lambda f: tuple(int(c) for c in f),
    )
    d = _mult_order(3, p)
    assert all(pdeg(f) == d for f in rest)
    prod = xm1
    for f in rest:
        prod = pmul(prod, f)
    assert np.array_equal(prod, xpm1(p))
    return FactorSet(p=p, factors=(xm1, *rest), common_degree=d)


def primitive_idempotents(fs: FactorSet):
    """Primitive idempotents e~_0, ..., e~_m of GF(3)[x]/(x^p - 1).

    e~_i = (q_i^{-1} mod g_i) * q_i where q_i = (x^p - 1)/g_i; by CRT
    these are idempotent, pairwise orthogonal and sum to 1.
    """
    modulus = xpm1(fs.p)
    idems = []
    for g in fs.factors:
        q, r = pdivmod(modulus, g)
        assert len(r) == 0
        _, u, _ = pxgcd(q, g)  # u*q + v*g = 1
        idems.append(pmod(pmul(u, q), modulus))
    return idems


# ---------------------------------------------------------------------------
# cyclic code bases and the shift action

@dataclass(frozen=True)
class CyclicBasis:
    p: int
    gen_poly: np.ndarray
    basis: np.ndarray     # d x p, rows x^i * gen_poly
    z_action: np.ndarray  # d x d matrix of the coordinate shift on the basis
    min_poly: np.ndarray  # minimal polynomial of z_action (degree d)


def _cyclic_shift_rows(m) -> np.ndarray:
    return np.roll(m, 1, axis=1)


def _minimal_polynomial(z) -> np.ndarray:
    """Minimal polynomial of a square matrix over GF(3) (here always of
    full degree, since z generates a field)."""
    d = z.shape[0]
    powers = [np.eye(d, dtype=np.int8).ravel()]
    for _ in range(d):
        powers.append(gf3.mmul(powers[-1].reshape(d, d), z).ravel())
    a = np.array(powers[:-1]).T  # columns: vec(z^0..z^{d-1})
    sol = gf3.solve_right(a, powers[-1])
    assert sol is not None
    return ptrim(np.concatenate([(3 - sol.astype(np.int64)) % 3, [1]]))


def cyclic_basis(p: int, gen_poly) -> CyclicBasis:
    """Basis of the length-p cyclic code with the given generator
    polynomial, together with the matrix of the coordinate shift."""
    gen_poly = ptrim(gen_poly)
    if len(pmod(xpm1(p), gen_poly)):
        raise ValueError("gen_poly does not divide x^p - 1")
    d = p - pdeg(gen_poly)
    basis = np.zeros((d, p), dtype=np.int8)
    for i in range(d):
        basis[i, i : i + len(gen_poly)] = gen_poly
    shifted = _cyclic_shift_rows(basis)
    # z @ basis == shifted  (solve row-wise: basis^T @ z^T = shifted^T)
    zt = gf3.solve_right(basis.T, shifted.T)
    assert zt is not None
    z = zt.T.astype(np.int8)
    return CyclicBasis(p=p, gen_poly=gen_poly, basis=basis, z_action=z,
                       min_poly=_minimal_polynomial(z))


def dual_basis(b: CyclicBasis, partner_gen) -> CyclicBasis:
    """Basis g2 of the partner cyclic code with b.basis @ g2.T == I.

    Fails when the bilinear pairing between the two codes is degenerate,
    which signals that the factors are not reciprocal-paired.
    """
    partner = cyclic_basis(b.p, partner_gen)
    if partner.basis.shape[0] != b.basis.shape[0]:
        raise ValueError("partner code has the wrong dimension")
    gram = gf3.mmul(b.basis, partner.basis.T)
    try:
        m = gf3.inv(gram.T)
    except np.linalg.LinAlgError:
        raise ValueError("degenerate pairing: factors are not reciprocal-paired")
    g2 = gf3.mmul(m, partner.basis)
    shifted = _cyclic_shift_rows(g2)
    zt = gf3.solve_right(g2.T, shifted.T)
    assert zt is not None
    z2 = zt.T.astype(np.int8)
    return CyclicBasis(p=b.p, gen_poly=partner.gen_poly, basis=g2,
                       z_action=z2, min_poly=_minimal_polynomial(z2))


# ---------------------------------------------------------------------------
# extension field elements

@dataclass(frozen=True)
class ExtElem:
    """An element of GF(3^d) as a polynomial residue mod an irreducible
    modulus (the minimal polynomial of some shift matrix)."""

    modulus: np.ndarray
    rep: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "modulus", ptrim(self.modulus))
        object.__setattr__(self, "rep", pmod(self.rep, self.modulus))

    def _check(self, other: "ExtElem"):
        if not np.array_equal(self.modulus, other.modulus):
            raise ValueError("mixed moduli in ExtElem arithmetic")

    def __add__(self, other):
        self._check(other)
        return ExtElem(self.modulus, padd(self.rep, other.rep))

    def __sub__(self, other):
        self._check(other)
        return ExtElem(self.modulus, psub(self.rep, other.rep))

    def __neg__(self):
        return ExtElem(self.modulus, psub([], self.rep))

    def __mul__(self, other):
        self._check(other)
        return ExtElem(self.modulus, pmul(self.rep, other.rep))

    def __eq__(self, other):
        return (np.array_equal(self.modulus, other.modulus)
                and np.array_equal(self.rep, other.rep))

    def __hash__(self):
        return hash((tuple(self.modulus), tuple(self.rep)))

    def is_zero(self) -> bool:
        return len(self.rep) == 0

    def inverse(self) -> "ExtElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        g, u, _ = pxgcd(self.rep, self.modulus)
        assert pdeg(g) == 0
        return ExtElem(self.modulus, u)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = ExtElem(self.modulus, [1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out


def ext_zero(modulus) -> ExtElem:
    return ExtElem(modulus, [])


def ext_one(modulus) -> ExtElem:
    return ExtElem(modulus, [1])


def ext_x(modulus) -> ExtElem:
    return ExtElem(modulus, [0, 1])


def embed(a: ExtElem, b: CyclicBasis) -> np.ndarray:
    """The d x p block sum_i a_i * z_action^i @ basis."""
    if not np.array_equal(a.modulus, b.min_poly):
        raise ValueError("ExtElem modulus does not match the basis shift action")
    return gf3.mmul(poly_eval_matrix(a.rep, b.z_action), b.basis)
