"""Dense linear algebra over F_p with numpy int64 arrays."""

from __future__ import annotations

import numpy as np


def _inv(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


def rref(A, p: int, copy: bool = True):
    """Reduced row echelon form mod p.

    Returns (R, pivots) where R has rank rows and pivots lists pivot columns.
    """
    M = np.array(A, dtype=np.int64, copy=copy) % p
    if M.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = (M[r] * _inv(M[r, c], p)) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - np.outer(col[nzr], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    # eliminate along the shorter side
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref(A, p)[1])


def nullspace(A, p: int) -> np.ndarray:
    """Basis of {v : A v = 0} as rows of the returned array."""
    A = np.asarray(A, dtype=np.int64)
    ncols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, piv = rref(A, p)
    free = [c for c in range(ncols) if c not in set(piv)]
    N = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        N[k, f] = 1
        for i, pc in enumerate(piv):
            N[k, pc] = (-R[i, f]) % p
    return N


def left_nullspace(A, p: int) -> np.ndarray:
    return nullspace(np.asarray(A, dtype=np.int64).T, p)


def row_space(A, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return np.zeros((0, A.shape[1] if A.ndim == 2 else 0), dtype=np.int64)
    return rref(A, p)[0]


def solve(A, b, p: int):
    """One solution x of A x = b mod p, or None if inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    aug = np.hstack([A, b])
    R, piv = rref(aug, p)
    n = A.shape[1]
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, n]
    return x


def complement_rows(span, candidates, p: int) -> list[int]:
    """Indices of candidate rows that extend the row space of ``span`` greedily."""
    span = np.asarray(span, dtype=np.int64)
    cand = np.asarray(candidates, dtype=np.int64)
    if cand.size == 0:
        return []
    ncols = cand.shape[1]
    R = rref(span, p)[0] if span.size else np.zeros((0, ncols), dtype=np.int64)
    chosen = []
    for i in range(cand.shape[0]):
        v = reduce_vector(R, cand[i], p)
        if np.any(v):
            chosen.append(i)
            R = rref(np.vstack([R, v]), p)[0]
    return chosen


def reduce_vector(R, v, p: int, pivots=None):
    """Reduce v against a matrix R already in rref."""
    v = np.asarray(v, dtype=np.int64) % p
    if R.shape[0] == 0:
        return v
    if pivots is None:
        pivots = [int(np.nonzero(row)[0][0]) for row in R]
    for i, c in enumerate(pivots):
        if v[c]:
            v = (v - v[c] * R[i]) % p
    return v
