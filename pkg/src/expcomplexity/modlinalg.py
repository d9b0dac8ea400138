"""Exact Gaussian elimination mod p on numpy integer matrices.

Row reduction uses rank-1 updates only (no dot products), so int64 never
overflows for p < 2**31.  Pivoting is deterministic: columns left to right,
pivot row = first row with a nonzero entry.
"""

from __future__ import annotations

import numpy as np


def rref_mod(a: np.ndarray, p: int):
    """Reduced row echelon form mod p; returns (matrix, pivot column list)."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = m[r] * inv % p
        col = m[:, c].copy()
        col[r] = 0
        m -= np.outer(col, m[r])
        m %= p
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace_mod(a: np.ndarray, p: int):
    """Basis of the right kernel mod p, one vector per free column, in
    ascending free-column order."""
    m, pivots = rref_mod(a, p)
    cols = m.shape[1]
    pivot_set = set(pivots)
    basis = []
    for j in range(cols):
        if j in pivot_set:
            continue
        v = np.zeros(cols, dtype=np.int64)
        v[j] = 1
        for r, c in enumerate(pivots):
            v[c] = (-int(m[r, j])) % p
        basis.append(v)
    return basis


def rank_mod(a: np.ndarray, p: int) -> int:
    return len(rref_mod(a, p)[1])
