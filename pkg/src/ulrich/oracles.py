"""Brute-force degreewise checks against plain linear algebra.

Nothing here calls the Gröbner engine; each function compares an engine result
with dimensions of explicit spans of monomial multiples, degree by degree, and
returns the list of mismatches (empty means agreement).
"""
from __future__ import annotations

import itertools

import numpy as np

from .graded import GradedModulePresentation, graded_piece_dimension, hilbert_data
from .linalg import nullspace_mod_p, poly_multiply_monomial, rank_mod_p, row_reduce, slice_matrix


def _vector_row(entries, basis, reduce=None):
    row = np.zeros(len(basis), dtype=np.int64)
    for i, f in enumerate(entries):
        if reduce is not None:
            f = reduce(f)
        for e, c in f.coeffs.items():
            row[basis.index[(i, e)]] = c
    return row


def kernel_dimension(columns, col_degrees, twists, d, monomials, multiply, p) -> int:
    """dim of the degree-d kernel of ⊕ A(-b_j) → ⊕ A(-a_i)."""
    source = sum(len(monomials(d - b)) for b in col_degrees)
    if not columns or source == 0:
        return source
    A, _ = slice_matrix(columns, col_degrees, twists, d, monomials, multiply, p)
    return source - rank_mod_p(A, p)


def span_dimension(vectors, degrees, twists, d, monomials, multiply, p) -> int:
    if not vectors:
        return 0
    A, _ = slice_matrix(vectors, degrees, twists, d, monomials, multiply, p)
    return rank_mod_p(A, p) if len(A) else 0


def syzygy_mismatches(columns, col_degrees, twists, syz, bound, monomials, multiply, p,
                      reduce=lambda f: f, start=0):
    """Compare generated syzygies with degreewise kernels.

    ``syz`` are entry tuples in source coordinates. Reports degrees where the
    syzygies do not span the kernel, and any syzygy that is not a relation.
    """
    bad = []
    syz = [tuple(v) for v in syz]
    degs = []
    for v in syz:
        ds = {f.degree() + b for f, b in zip(v, col_degrees) if not f.is_zero()}
        if len(ds) != 1:
            bad.append(("inhomogeneous", v))
            return bad
        degs.append(ds.pop())
        for i in range(len(twists)):
            acc = None
            for f, col in zip(v, columns):
                if f.is_zero() or col[i].is_zero():
                    continue
                term = f * col[i]
                acc = term if acc is None else acc + term
            if acc is not None and not reduce(acc).is_zero():
                bad.append(("not_a_relation", v))
                return bad
    for d in range(start, bound + 1):
        k = kernel_dimension(columns, col_degrees, twists, d, monomials, multiply, p)
        s = span_dimension(syz, degs, col_degrees, d, monomials, multiply, p)
        if k != s:
            bad.append((d, k, s))
    return bad


def hilbert_mismatches(M: GradedModulePresentation, bound: int, start: int | None = None):
    """Degrees where the Hilbert series disagrees with brute-force dimensions."""
    H = hilbert_data(M)
    lo = min(M.twists, default=0) if start is None else start
    bad = []
    for d in range(lo, bound + 1):
        a, b = H.function(d), graded_piece_dimension(M, d)
        if a != b:
            bad.append((d, a, b))
    return bad


# -- ideals ------------------------------------------------------------------------

def ideal_piece(ring, gens, d):
    """Row-reduced span of I_d in the monomial basis of S_d, with that basis."""
    A, basis = slice_matrix([(g,) for g in gens], [g.degree() for g in gens], (0,), d,
                            ring.monomials, poly_multiply_monomial, ring.p)
    R, piv = row_reduce(A, ring.p) if len(A) else (A, [])
    return R, piv, basis


def _residues(R, piv, rows, p):
    """Rows reduced modulo the row space of an RREF matrix."""
    out = np.array(rows, dtype=np.int64) % p
    for i, c in enumerate(piv):
        coef = out[:, c].copy()
        if coef.any():
            out = (out - np.outer(coef, R[i])) % p
    return out


def ideal_pieces_equal(ring, gens_a, gens_b, bound: int, start: int = 0):
    bad = []
    for d in range(start, bound + 1):
        A = ideal_piece(ring, gens_a, d)[0]
        B = ideal_piece(ring, gens_b, d)[0]
        ra = len(A)
        rb = len(B)
        both = rank_mod_p(np.vstack([A, B]), ring.p) if ra and rb else max(ra, rb)
        if not (ra == rb == both):
            bad.append((d, ra, rb))
    return bad


def in_ideal(f, gens) -> bool:
    ring = f.ring
    if f.is_zero():
        return True
    d = f.degree()
    R, piv, basis = ideal_piece(ring, gens, d)
    row = _vector_row((f,), basis)
    if not len(R):
        return False
    return not _residues(R, piv, [row], ring.p).any()


def colon_piece_dimension(ring, I_gens, J_gens, d) -> int:
    """dim {f in S_d : f J ⊆ I} by linear algebra."""
    monos = ring.monomials(d)
    if not monos:
        return 0
    blocks = []
    for g in J_gens:
        e = d + g.degree()
        R, piv, basis = ideal_piece(ring, I_gens, e)
        rows = [_vector_row((g.mul_term(1, m),), basis) for m in monos]
        res = _residues(R, piv, rows, ring.p) if len(R) else np.array(rows, dtype=np.int64)
        blocks.append(res)
    if not blocks:
        return len(monos)
    M = np.hstack(blocks)
    # f = Σ c_m m lies in the colon iff c M = 0
    return len(nullspace_mod_p(M.T, ring.p))


def colon_mismatches(ring, I_gens, J_gens, K_gens, bound: int, start: int = 0):
    """Compare a computed colon ideal K with [I : J] degree by degree."""
    bad = []
    for d in range(start, bound + 1):
        expected = colon_piece_dimension(ring, I_gens, J_gens, d)
        got = len(ideal_piece(ring, K_gens, d)[0])
        if expected != got:
            bad.append((d, expected, got))
    for k in K_gens:
        if not all(in_ideal(k * g, I_gens) for g in J_gens):
            bad.append(("not_in_colon", str(k)))
    return bad


def power_generators(J_gens, n):
    return list({tuple(sorted(c.coeffs.items())): c
                 for c in (_prod(t) for t in itertools.combinations_with_replacement(J_gens, n))}.values())


def _prod(fs):
    out = fs[0]
    for f in fs[1:]:
        out = out * f
    return out


def saturation_mismatches(ring, I_gens, J_gens, sat_gens, bound: int, power: int, start: int = 0):
    """Compare a saturation with [I : J^power] and require [I : J^power] = [I : J^(power+1)]."""
    Jn = power_generators(J_gens, power)
    Jn1 = power_generators(J_gens, power + 1)
    bad = colon_mismatches(ring, I_gens, Jn, sat_gens, bound, start)
    for d in range(start, bound + 1):
        a = colon_piece_dimension(ring, I_gens, Jn, d)
        b = colon_piece_dimension(ring, I_gens, Jn1, d)
        if a != b:
            bad.append(("not_stable", d, a, b))
    return bad
