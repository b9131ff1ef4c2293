"""Dense linear algebra over F_p and degreewise slices of polynomial maps.

This is the brute-force side of every oracle check: it never touches the
Gröbner engine.
"""
from __future__ import annotations

import numpy as np


def row_reduce(M, p: int):
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim != 2 or A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0), []
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(M, p: int) -> int:
    A = np.asarray(M)
    if A.size == 0:
        return 0
    # eliminate along the shorter side
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(row_reduce(A, p)[1])


def nullspace_mod_p(M, p: int):
    """Basis (as rows) of {v : M v = 0}."""
    A = np.asarray(M, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = row_reduce(A, p)
    free = [c for c in range(n) if c not in set(pivots)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, c in enumerate(pivots):
            out[k, c] = (-R[i, f]) % p
    return out


def same_row_space(A, B, p: int) -> bool:
    ra, rb = rank_mod_p(A, p), rank_mod_p(B, p)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank_mod_p(np.vstack([A, B]), p) == ra


class SliceBasis:
    """Monomial basis of the degree-d part of ⊕ R(-twists[i])."""

    def __init__(self, twists, d, monomials):
        self.index = {}
        for i, a in enumerate(twists):
            for m in monomials(d - a):
                self.index[(i, m)] = len(self.index)

    def __len__(self):
        return len(self.index)


def slice_matrix(columns, col_degrees, twists, d, monomials, multiply, p):
    """Rows: images m*col_j for each monomial m of degree d - b_j, in target coordinates.

    ``columns`` are sequences of polynomials (one per target summand);
    ``multiply(m, f)`` returns a dict exponent -> coefficient for x^m * f.
    """
    target = SliceBasis(twists, d, monomials)
    rows = []
    for col, b in zip(columns, col_degrees):
        for m in monomials(d - b):
            row = np.zeros(len(target), dtype=np.int64)
            for i, f in enumerate(col):
                if f.is_zero():
                    continue
                for e, c in multiply(m, f).items():
                    row[target.index[(i, e)]] = (row[target.index[(i, e)]] + c) % p
            rows.append(row)
    if not rows:
        return np.zeros((0, len(target)), dtype=np.int64), target
    return np.array(rows, dtype=np.int64), target


def poly_multiply_monomial(m, f):
    return {tuple(a + b for a, b in zip(m, e)): c for e, c in f.coeffs.items()}
