"""Dense exact linear algebra: row reduction over GF(p) and over QQ.

The prime-field path is vectorized with numpy int64 (products stay below
2^63 for any sane characteristic); the rational path uses Fractions and is
meant for the small matrices that arise over QQ.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = ["rref_mod_p", "rank_mod_p", "rref_fractions", "rank_fractions"]


def rref_mod_p(matrix, p: int):
    """Reduced row echelon form over GF(p).

    Returns (rref rows as an int64 array without zero rows, pivot column
    indices).  The input is not modified.
    """
    a = np.array(matrix, dtype=np.int64) % p
    if a.size == 0:
        return a.reshape(0, a.shape[1] if a.ndim == 2 else 0), []
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + nz[0]
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_mod_p(matrix, p: int) -> int:
    return len(rref_mod_p(matrix, p)[1])


def rref_fractions(matrix):
    """Reduced row echelon form over QQ; same contract as rref_mod_p."""
    a = [[Fraction(x) for x in row] for row in matrix]
    if not a:
        return [], []
    rows, cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_fractions(matrix) -> int:
    return len(rref_fractions(matrix)[1])
