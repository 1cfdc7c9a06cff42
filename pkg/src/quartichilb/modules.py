"""Polynomial matrices, graded complexes, syzygies, resolutions and minors."""

from __future__ import annotations

import json
from collections import Counter
from itertools import combinations
from typing import Sequence

import numpy as np

from .ideal import Ideal, minimal_generators
from .linalg import nullspace, rank, rref
from .ring import Poly, Ring, RingError, parse_poly


class PolyMatrix:
    """Matrix of polynomials with optional generator degrees on rows and columns.

    With degrees declared, the matrix is a degree-0 map
    ``⊕_j R(-col_degrees[j]) -> ⊕_i R(-row_degrees[i])`` and entry (i, j) is
    zero or homogeneous of degree ``col_degrees[j] - row_degrees[i]``.
    """

    def __init__(self, ring: Ring, entries: Sequence[Sequence], row_degrees=None, col_degrees=None):
        self.ring = ring
        self.rows = [[e if isinstance(e, Poly) else ring(e) for e in row] for row in entries]
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise RingError("ragged matrix")
        self.row_degrees = list(row_degrees) if row_degrees is not None else None
        self.col_degrees = list(col_degrees) if col_degrees is not None else None
        if self.row_degrees is not None and len(self.row_degrees) != self.nrows:
            raise RingError("row degree count mismatch")
        if self.col_degrees is not None and len(self.col_degrees) != self.ncols:
            raise RingError("column degree count mismatch")

    @classmethod
    def row(cls, ring: Ring, polys: Sequence[Poly], row_degree: int = 0) -> "PolyMatrix":
        degs = [f.degree() + row_degree for f in polys]
        return cls(ring, [list(polys)], [row_degree], degs)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[Poly]:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list[Poly]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [self.column(j) for j in range(self.ncols)],
                          self.col_degrees and [-d for d in self.col_degrees],
                          self.row_degrees and [-d for d in self.row_degrees])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise RingError("matrix shape mismatch")
        R = self.ring
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = R.zero()
                for k in range(self.ncols):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(R, out, self.row_degrees, other.col_degrees)

    def is_zero(self) -> bool:
        return all(not e for r in self.rows for e in r)

    def is_homogeneous(self) -> bool:
        if self.row_degrees is None or self.col_degrees is None:
            return False
        for i, r in enumerate(self.rows):
            for j, e in enumerate(r):
                if e and not (e.is_homogeneous() and e.degree() == self.col_degrees[j] - self.row_degrees[i]):
                    return False
        return True

    def reduce_mod(self, I: Ideal) -> "PolyMatrix":
        G = I.gb()
        return PolyMatrix(self.ring, [[G.normal_form(e) for e in r] for r in self.rows],
                          self.row_degrees, self.col_degrees)

    def to_json(self) -> dict:
        return {
            "ring": list(self.ring.variables),
            "char": self.ring.char,
            "row_degrees": self.row_degrees,
            "col_degrees": self.col_degrees,
            "entries": [[str(e) for e in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, ring: Ring, data: dict) -> "PolyMatrix":
        return cls(ring, [[parse_poly(ring, s) for s in r] for r in data["entries"]],
                   data.get("row_degrees"), data.get("col_degrees"))

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"


# -- per-degree matrices ----------------------------------------------------

def _domain_basis(M: PolyMatrix, e: int):
    R = M.ring
    return [(j, m) for j, d in enumerate(M.col_degrees) for m in R.monomials(e - d)]


def _target_index(M: PolyMatrix, e: int):
    R = M.ring
    offs, idx = 0, []
    for d in M.row_degrees:
        mi = R.monomial_index(e - d)
        idx.append((offs, mi))
        offs += len(mi)
    return idx, offs


def degree_matrix(M: PolyMatrix, e: int) -> np.ndarray:
    """Matrix of M in degree e; columns are (column, monomial) pairs."""
    basis = _domain_basis(M, e)
    idx, size = _target_index(M, e)
    A = np.zeros((size, len(basis)), dtype=np.int64)
    for col, (j, m) in enumerate(basis):
        for i in range(M.nrows):
            f = M.rows[i][j]
            if not f:
                continue
            off, mi = idx[i]
            for t, c in f._t.items():
                A[off + mi[t + m], col] = c
    return A


def _vector_to_column(M: PolyMatrix, e: int, v) -> list[Poly]:
    R = M.ring
    basis = _domain_basis(M, e)
    terms = [dict() for _ in range(M.ncols)]
    for k, c in enumerate(v):
        if c:
            j, m = basis[k]
            terms[j][m] = int(c)
    return [Poly._raw(R, t) for t in terms]


def _column_vector(M: PolyMatrix, col: list[Poly], gen_deg: int, e: int) -> list[np.ndarray]:
    """All monomial multiples of a domain element of degree gen_deg, as degree-e vectors."""
    R = M.ring
    basis = _domain_basis(M, e)
    where = {b: k for k, b in enumerate(basis)}
    out = []
    for mono in R.monomials(e - gen_deg):
        v = np.zeros(len(basis), dtype=np.int64)
        for j, f in enumerate(col):
            for t, c in f._t.items():
                v[where[(j, t + mono)]] = c
        out.append(v)
    return out


def syzygies(M: PolyMatrix, max_degree: int | None = None, stop_rank: int | None = None) -> PolyMatrix:
    """Minimal generators of the kernel of M, found degree by degree.

    The degree bound defaults to the sum of the two largest column degrees
    over a two-variable ring and to (max column degree + 8) otherwise.  When the
    kernel is known to be free of rank ``stop_rank`` the search ends as soon as
    that many generators are found.
    """
    R = M.ring
    if R.params:
        raise RingError("syzygies need a positively graded ring")
    if M.col_degrees is None:
        M = _infer_degrees(M)
    if max_degree is None:
        cd = sorted(M.col_degrees)
        if len(R.graded_vars) <= 2 and len(cd) >= 2:
            max_degree = cd[-1] + cd[-2] - min(M.row_degrees)
        else:
            max_degree = max(cd) + 8
    gens: list[tuple[int, list[Poly]]] = []
    p = R.char
    start = min(M.col_degrees)
    for e in range(start, max_degree + 1):
        if stop_rank is not None and len(gens) >= stop_rank:
            break
        A = degree_matrix(M, e)
        ncols = A.shape[1]
        if ncols == 0:
            continue
        K = nullspace(A, p) if A.shape[0] else np.eye(ncols, dtype=np.int64)
        if K.shape[0] == 0:
            continue
        old = []
        for d, col in gens:
            old += _column_vector(M, col, d, e)
        if old:
            O = np.array(old, dtype=np.int64)
            r_old = rank(O, p)
            if r_old == K.shape[0]:
                continue
            Rr, piv = rref(O, p)
        else:
            Rr, piv = np.zeros((0, ncols), dtype=np.int64), []
        cur, cur_piv = Rr, list(piv)
        for v in K:
            w = v.copy() % p
            for i, c in enumerate(cur_piv):
                if w[c]:
                    w = (w - w[c] * cur[i]) % p
            if np.any(w):
                gens.append((e, _vector_to_column(M, e, w)))
                cur, cur_piv = rref(np.vstack([cur, w]), p)
    cols = [c for _, c in gens]
    degs = [d for d, _ in gens]
    entries = [[cols[k][i] for k in range(len(cols))] for i in range(M.ncols)] if cols else [[] for _ in range(M.ncols)]
    return PolyMatrix(R, entries, list(M.col_degrees), degs)


def _infer_degrees(M: PolyMatrix) -> PolyMatrix:
    rd = M.row_degrees or [0] * M.nrows
    cd = []
    for j in range(M.ncols):
        d = None
        for i in range(M.nrows):
            e = M.rows[i][j]
            if e:
                d = e.degree() + rd[i]
                break
        cd.append(0 if d is None else d)
    return PolyMatrix(M.ring, M.rows, rd, cd)


def kernel_dim(M: PolyMatrix, e: int) -> int:
    A = degree_matrix(M, e)
    return A.shape[1] - (rank(A, M.ring.char) if A.size else 0)


def span_dim(M: PolyMatrix, e: int) -> int:
    """Dimension of the degree-e part of the submodule generated by M's columns."""
    R = M.ring
    vecs = []
    idx, size = _target_index(M, e)
    for j, d in enumerate(M.col_degrees):
        for mono in R.monomials(e - d):
            v = np.zeros(size, dtype=np.int64)
            for i in range(M.nrows):
                f = M.rows[i][j]
                off, mi = idx[i]
                for t, c in f._t.items():
                    v[off + mi[t + mono]] = c
            vecs.append(v)
    if not vecs or size == 0:
        return 0
    return rank(np.array(vecs), R.char)


# -- complexes ----------------------------------------------------------------

class GradedComplex:
    """F_0 <- F_1 <- ... with F_i given by generator degrees and maps[i]: F_{i+1} -> F_i."""

    def __init__(self, ring: Ring, modules: list[list[int]], maps: list[PolyMatrix]):
        self.ring = ring
        self.modules = [list(m) for m in modules]
        self.maps = list(maps)

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def betti(self) -> dict[int, Counter]:
        return {i: Counter(m) for i, m in enumerate(self.modules)}

    def betti_numbers(self) -> list[int]:
        return [len(m) for m in self.modules]

    def twists(self) -> list[list[int]]:
        return [sorted((-d for d in m), reverse=True) for m in self.modules]

    def compositions_vanish(self) -> bool:
        return all((self.maps[i] @ self.maps[i + 1]).is_zero() for i in range(len(self.maps) - 1))

    def degrees_consistent(self) -> bool:
        for i, M in enumerate(self.maps):
            if M.row_degrees != self.modules[i] or M.col_degrees != self.modules[i + 1]:
                return False
            if not M.is_homogeneous():
                return False
        return True

    def euler_characteristic(self, n: int) -> int:
        nv = len(self.ring.graded_vars)
        from math import comb

        def dimS(k):
            return comb(k + nv - 1, nv - 1) if k >= 0 else 0

        return sum((-1) ** i * sum(dimS(n - d) for d in m) for i, m in enumerate(self.modules))

    def numerator(self) -> dict[int, int]:
        out: Counter = Counter()
        for i, m in enumerate(self.modules):
            for d in m:
                out[d] += (-1) ** i
        return {k: v for k, v in sorted(out.items()) if v}

    def to_json(self) -> dict:
        return {
            "ring": list(self.ring.variables),
            "char": self.ring.char,
            "shifts": self.twists(),
            "modules": self.modules,
            "maps": [M.to_json() for M in self.maps],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def betti_table(self) -> str:
        """Macaulay-style table: row k lists beta_{i, i+k}."""
        b = self.betti()
        if not any(b.values()):
            return ""
        lo = min(d - i for i, c in b.items() for d in c)
        hi = max(d - i for i, c in b.items() for d in c)
        lines = []
        for k in range(lo, hi + 1):
            lines.append(f"{k:>3}: " + " ".join(f"{b[i].get(i + k, 0) or '-':>3}" for i in range(len(self.modules))))
        return "\n".join(lines)


def free_resolution(I: Ideal | PolyMatrix, max_degree: int | None = None) -> GradedComplex:
    """Minimal graded free resolution of S/I (or of the cokernel of a presentation).

    Each step computes the kernel degree by degree up to ``max_degree + i``;
    the default bound is the largest generator degree plus 8.
    """
    if isinstance(I, Ideal):
        R = I.ring
        if not I.homogeneous:
            raise RingError("free_resolution needs a homogeneous ideal")
        mins = minimal_generators(I).gens if I.gens else ()
        mins = sorted(mins, key=lambda g: (g.degree(), g.lm))
        if any(g.is_constant() for g in mins):
            return GradedComplex(R, [[]], [])
        M = PolyMatrix.row(R, mins)
    else:
        M = I
        R = M.ring
    if max_degree is None:
        max_degree = max(M.col_degrees, default=0) + 8
    modules = [list(M.row_degrees), list(M.col_degrees)]
    maps = [M]
    cur = M
    nv = len(R.graded_vars)
    for i in range(1, nv + 1):
        if cur.ncols == 0:
            break
        K = syzygies(cur, max_degree + i)
        if K.ncols == 0:
            break
        modules.append(list(K.col_degrees))
        maps.append(K)
        cur = K
    if not modules[-1]:
        modules.pop()
    return GradedComplex(R, modules, maps)


def resolution_from_dict(data: dict) -> GradedComplex:
    from .ring import Ring

    R = Ring(tuple(data["ring"]), data["char"])
    maps = [PolyMatrix.from_json(R, m) for m in data["maps"]]
    return GradedComplex(R, data["modules"], maps)


# -- minors -------------------------------------------------------------------

def minors(M: PolyMatrix, r: int) -> list[Poly]:
    """All r x r minors, by Laplace expansion shared across column subsets."""
    if r < 1 or r > min(M.nrows, M.ncols):
        raise ValueError(f"minor size {r} out of range for a {M.nrows}x{M.ncols} matrix")
    R = M.ring
    out = []
    for rows in combinations(range(M.nrows), r):
        level = {(): R.one()}
        for k, i in enumerate(rows):
            nxt = {}
            for cols in combinations(range(M.ncols), k + 1):
                acc = R.zero()
                for pos, j in enumerate(cols):
                    sub = level.get(cols[:pos] + cols[pos + 1:])
                    e = M.rows[i][j]
                    if sub and e:
                        term = e * sub
                        acc = acc - term if (k - pos) % 2 else acc + term
                if acc:
                    nxt[cols] = acc
            level = nxt
        out.extend(level.values())
    return out


def minors_ideal(M: PolyMatrix, r: int) -> Ideal:
    seen = {}
    for f in minors(M, r):
        f = f.monic()
        seen.setdefault(frozenset(f._t.items()), f)
    return Ideal(M.ring, list(seen.values()))
