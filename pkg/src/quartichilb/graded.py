"""Degree-by-degree linear algebra: graded pieces of ideals as vector spaces."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .linalg import rank, rref
from .ring import Poly, Ring, RingError


def coeff_vector(f: Poly, degree: int) -> np.ndarray:
    idx = f.ring.monomial_index(degree)
    v = np.zeros(len(idx), dtype=np.int64)
    for m, c in f._t.items():
        try:
            v[idx[m]] = c
        except KeyError:
            raise RingError(f"{f} is not homogeneous of degree {degree}") from None
    return v


def vector_poly(ring: Ring, v, degree: int) -> Poly:
    mons = ring.monomials(degree)
    return Poly._raw(ring, {mons[i]: int(c) for i, c in enumerate(v) if c})


def degree_part_matrix(gens: Sequence[Poly], n: int) -> np.ndarray:
    """Rows spanning I_n: every generator times every monomial of complementary degree."""
    if not gens:
        return np.zeros((0, 0), dtype=np.int64)
    R = gens[0].ring
    idx = R.monomial_index(n)
    rows = []
    for g in gens:
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise RingError("graded pieces need homogeneous generators")
        d = g.degree()
        if d > n:
            continue
        for m in R.monomials(n - d):
            row = np.zeros(len(idx), dtype=np.int64)
            for t, c in g._t.items():
                row[idx[t + m]] = c
            rows.append(row)
    if not rows:
        return np.zeros((0, len(idx)), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def graded_slice_dim(gens: Sequence[Poly], n: int) -> int:
    """dim_k I_n computed directly as a matrix rank (no Groebner bases)."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens or n < 0:
        return 0
    A = degree_part_matrix(gens, n)
    return rank(A, gens[0].ring.char) if A.size else 0


def degree_part_basis(gens: Sequence[Poly], n: int) -> np.ndarray:
    """Row-reduced basis of I_n."""
    A = degree_part_matrix(gens, n)
    R = gens[0].ring if gens else None
    if A.size == 0:
        size = len(R.monomials(n)) if R else 0
        return np.zeros((0, size), dtype=np.int64)
    return rref(A, R.char)[0]


def quotient_dim(gens: Sequence[Poly], ring: Ring, n: int) -> int:
    return len(ring.monomials(n)) - graded_slice_dim(gens, n)
