"""Cohomology of space curves through a finite projection to P^1.

For a curve C in Noether position with respect to A = k[z,w], the coordinate
ring S/I_C is a finitely generated A-module and N = Hom_A(S/I_C, A) is free.
Its generator degrees are the negatives of the spectrum, the dual N^v is
H^0_*(O_C), and the cokernel of S/I_C -> N^v is the Rao module.  Everything
reduces to linear algebra over A in a bounded range of degrees.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from .graded import coeff_vector, graded_slice_dim
from .hilbert import hilbert
from .ideal import Ideal, exact_divide, line_ring, saturate_irrelevant
from .linalg import nullspace, rank, rref, solve
from .modules import GradedComplex, PolyMatrix, free_resolution, syzygies
from .ring import Poly, Ring, RingError, linear_change


class NotACurve(ValueError):
    pass


def dim_S(n: int, nvars: int = 4) -> int:
    return comb(n + nvars - 1, nvars - 1) if n >= 0 else 0


# ---------------------------------------------------------------------------
# projection data
# ---------------------------------------------------------------------------

class Projection:
    """S/I as a module over A = k[z,w] together with its A-dual.

    ``change`` records the coordinate change z -> z + a x + b y,
    w -> w + c x + d y applied to reach Noether position (None if not needed).
    """

    def __init__(self, I: Ideal, seed: int = 0):
        R = I.ring
        if R.variables != ("x", "y", "z", "w"):
            raise RingError("projection route expects the ring k[x,y,z,w]")
        if not I.homogeneous:
            raise RingError("homogeneous ideal required")
        self.original = I
        self.change = None
        J = I
        rng = random.Random(seed)
        for attempt in range(8):
            if self._noether(J):
                break
            a, b, c, d = (rng.randrange(1, R.char) for _ in range(4))
            self.change = (a, b, c, d)
            x, y, z, w = R.gens()
            imgs = {"z": z + x.scale(a) + y.scale(b), "w": w + x.scale(c) + y.scale(d)}
            J = Ideal(R, [linear_change(f, imgs) for f in I.gens])
        else:
            raise NotACurve("could not reach Noether position (dimension > 1?)")
        self.ideal = J
        self.ring = R
        self.G = J.gb()
        self.A = line_ring(R.char)
        self.hilb = hilbert(J)
        if self.hilb.dimension != 2:
            raise NotACurve(f"S/I has Krull dimension {self.hilb.dimension}, expected 2")
        p = self.hilb.poly + [0] * 2
        self.degree = int(p[1])
        self.genus = int(1 - p[0])
        self._build()

    @staticmethod
    def _noether(J: Ideal) -> bool:
        R = J.ring
        leads = [R.unpack(m) for m in J.gb().leads]
        if any(sum(e) == 0 for e in leads):
            return False
        has_x = any(e[0] > 0 and e[1] == e[2] == e[3] == 0 for e in leads)
        has_y = any(e[1] > 0 and e[0] == e[2] == e[3] == 0 for e in leads)
        return has_x and has_y

    # -- module structure ------------------------------------------------
    def _build(self):
        R, A, G = self.ring, self.A, self.G
        leads = [R.unpack(m) for m in G.leads]
        maxx = max(e[0] for e in leads if e[1] == e[2] == e[3] == 0)
        maxy = max(e[1] for e in leads if e[0] == e[2] == e[3] == 0)
        B = []
        for i in range(maxx):
            for j in range(maxy):
                m = R.pack((i, j, 0, 0))
                if not any(R.divides(l, m) for l in G.leads):
                    B.append((i, j))
        self.B = sorted(B, key=lambda e: (e[0] + e[1], e))
        self.Bindex = {b: k for k, b in enumerate(self.B)}
        # relations: b*m - NF(b*m) for minimal z,w-monomials m with b*m non-standard
        rels = []
        for b in self.B:
            cands = set()
            for e in leads:
                if e[0] <= b[0] and e[1] <= b[1]:
                    cands.add((e[2], e[3]))
            mins = [c for c in cands if not any(o != c and o[0] <= c[0] and o[1] <= c[1] for o in cands)]
            for c in sorted(mins):
                rels.append((b, c))
        self.relations = rels
        entries = []
        row_degrees = []
        for b, c in rels:
            f = R.monomial((b[0], b[1], c[0], c[1]))
            nf = G.normal_form(f)
            row = [A.zero() for _ in self.B]
            row[self.Bindex[b]] = A.monomial(c)
            for coeffs, val in self.split(nf).items():
                row[self.Bindex[coeffs]] = row[self.Bindex[coeffs]] - val
            entries.append(row)
            row_degrees.append(-(sum(b) + sum(c)))
        col_degrees = [-sum(b) for b in self.B]
        if not entries:
            entries = [[A.zero() for _ in self.B]]
            row_degrees = [0]
        M = PolyMatrix(A, entries, row_degrees, col_degrees)
        d = self.degree
        maxb = max(sum(b) for b in self.B)
        bound = (d - 1) * maxb - (d - 1) - self.genus + maxb + 2
        K = syzygies(M, max_degree=bound, stop_rank=d)
        if K.ncols != d:
            raise NotACurve(f"dual module has {K.ncols} generators, expected rank {d}")
        self.phi_degrees = list(K.col_degrees)
        self.phi = [[K.rows[k][i] for k in range(len(self.B))] for i in range(d)]
        self.spectrum = sorted(-e for e in self.phi_degrees)
        self.torsion_free = (d - sum(self.spectrum)) == 1 - self.genus

    def split(self, f: Poly) -> dict[tuple[int, int], Poly]:
        """Write a reduced polynomial as sum of b * a_b with b in B, a_b in A."""
        R, A = self.ring, self.A
        out: dict[tuple[int, int], dict] = {}
        for m, c in f._t.items():
            e = R.unpack(m)
            out.setdefault((e[0], e[1]), {})[A.pack((e[2], e[3]))] = c
        return {b: Poly._raw(A, t) for b, t in out.items()}

    # -- cohomology numbers ------------------------------------------------
    def h0_OC(self, n: int) -> int:
        return sum(max(0, n - s + 1) for s in self.spectrum)

    def hf(self, n: int) -> int:
        return self.hilb.value(n)

    def h1_IC(self, n: int) -> int:
        return self.h0_OC(n) - self.hf(n)

    def h2_IC(self, n: int) -> int:
        return self.h0_OC(n) - (self.degree * n + 1 - self.genus)

    # -- evaluation into N^v ----------------------------------------------
    def ev(self, f: Poly) -> list[Poly]:
        """Image of f in N^v = H^0_*(O_C), as the tuple (phi_i(f))_i."""
        nf = self.G.normal_form(f)
        parts = self.split(nf)
        out = []
        A = self.A
        for i in range(self.degree):
            acc = A.zero()
            for b, a in parts.items():
                v = self.phi[i][self.Bindex[b]]
                if v:
                    acc = acc + a * v
            out.append(acc)
        return out

    def dual_coords(self, n: int) -> list[tuple[int, int]]:
        """Coordinates of (N^v)_n: pairs (i, monomial of A of degree n - s_i)."""
        return [(i, m) for i, s in enumerate(self.spectrum_by_index()) for m in self.A.monomials(n - s)]

    def spectrum_by_index(self) -> list[int]:
        return [-e for e in self.phi_degrees]

    def dual_vector(self, vals: Sequence[Poly], n: int) -> np.ndarray:
        coords = self.dual_coords(n)
        where = {c: k for k, c in enumerate(coords)}
        v = np.zeros(len(coords), dtype=np.int64)
        for i, f in enumerate(vals):
            for m, c in f._t.items():
                v[where[(i, m)]] = c
        return v

    def vector_dual(self, v, n: int) -> list[Poly]:
        coords = self.dual_coords(n)
        terms = [dict() for _ in range(self.degree)]
        for k, c in enumerate(v):
            if c:
                i, m = coords[k]
                terms[i][m] = int(c)
        return [Poly._raw(self.A, t) for t in terms]

    def ev_matrix(self, n: int) -> tuple[np.ndarray, list[Poly]]:
        """Columns: ev of the standard monomials of degree n."""
        R = self.ring
        lead = self.G.leads
        basis = [R.monomial(R.unpack(m)) for m in R.monomials(n)
                 if not any(R.divides(l, m) for l in lead)]
        coords = self.dual_coords(n)
        if not basis:
            return np.zeros((len(coords), 0), dtype=np.int64), basis
        cols = [self.dual_vector(self.ev(f), n) for f in basis]
        return np.array(cols, dtype=np.int64).T.reshape(len(coords), len(basis)), basis


# ---------------------------------------------------------------------------
# finite graded modules (Rao modules)
# ---------------------------------------------------------------------------

@dataclass
class FiniteGradedModule:
    """A finite-length graded module given by graded dimensions and variable actions.

    ``actions[v][n]`` is the matrix of multiplication by v from degree n to n+1.
    """

    dims: dict[int, int]
    actions: dict[str, dict[int, np.ndarray]]
    char: int

    def support(self) -> list[int]:
        return sorted(n for n, d in self.dims.items() if d)

    def act(self, v: str, n: int) -> np.ndarray:
        d0, d1 = self.dims.get(n, 0), self.dims.get(n + 1, 0)
        return self.actions[v].get(n, np.zeros((d1, d0), dtype=np.int64))

    def annihilating_forms(self, variables: Sequence[str]) -> np.ndarray:
        """Basis (rows) of linear forms sum c_v v killing the whole module."""
        blocks = []
        for n in self.support():
            mats = [self.act(v, n).reshape(-1) for v in variables]
            if mats[0].size:
                blocks.append(np.array(mats, dtype=np.int64).T)
        if not blocks:
            return np.eye(len(variables), dtype=np.int64)
        A = np.vstack(blocks)
        return nullspace(A, self.char)

    def presentation(self, ring: Ring, variables: Sequence[str]) -> PolyMatrix:
        """Minimal presentation over ``ring`` whose variables act as ``variables``."""
        p = self.char
        sup = self.support()
        if not sup:
            return PolyMatrix(ring, [], [], [])
        lo, hi = sup[0], sup[-1]
        gens: list[tuple[int, np.ndarray]] = []
        for n in range(lo, hi + 1):
            d = self.dims.get(n, 0)
            if not d:
                continue
            image = [self._apply_monomial(ring, variables, m, g, gd) for gd, g in gens
                     for m in ring.monomials(n - gd)]
            image = [v for v in image if v is not None]
            span = np.array(image, dtype=np.int64).reshape(-1, d) if image else np.zeros((0, d), dtype=np.int64)
            Rr, piv = rref(span, p) if span.size else (np.zeros((0, d), dtype=np.int64), [])
            for k in range(d):
                e = np.zeros(d, dtype=np.int64)
                e[k] = 1
                w = e.copy()
                for i, c in enumerate(piv):
                    if w[c]:
                        w = (w - w[c] * Rr[i]) % p
                if np.any(w):
                    gens.append((n, e))
                    Rr, piv = rref(np.vstack([Rr, e]), p)
        row_degrees = [gd for gd, _ in gens]
        # relations degree by degree up to hi + 1
        rels: list[tuple[int, list[Poly]]] = []
        for n in range(lo, hi + 2):
            basis = [(k, m) for k, (gd, _) in enumerate(gens) for m in ring.monomials(n - gd)]
            if not basis:
                continue
            d = self.dims.get(n, 0)
            cols = []
            for k, m in basis:
                v = self._apply_monomial(ring, variables, m, gens[k][1], gens[k][0])
                cols.append(v if v is not None else np.zeros(d, dtype=np.int64))
            Mat = np.array(cols, dtype=np.int64).T.reshape(d, len(basis))
            K = nullspace(Mat, p) if d else np.eye(len(basis), dtype=np.int64)
            if K.shape[0] == 0:
                continue
            old = []
            for rd, col in rels:
                for m in ring.monomials(n - rd):
                    old.append(self._free_vector(ring, basis, [f.shift(m) if f else f for f in col]))
            O = np.array(old, dtype=np.int64) if old else np.zeros((0, len(basis)), dtype=np.int64)
            Rr, piv = rref(O, p) if O.size else (np.zeros((0, len(basis)), dtype=np.int64), [])
            for v in K:
                w = v % p
                for i, c in enumerate(piv):
                    if w[c]:
                        w = (w - w[c] * Rr[i]) % p
                if np.any(w):
                    col = [ring.zero() for _ in gens]
                    for idx, c in enumerate(w):
                        if c:
                            k, m = basis[idx]
                            col[k] = col[k] + Poly._raw(ring, {m: int(c)})
                    rels.append((n, col))
                    Rr, piv = rref(np.vstack([Rr, w]), p)
        entries = [[col[k] for _, col in rels] for k in range(len(gens))]
        return PolyMatrix(ring, entries, row_degrees, [n for n, _ in rels])

    @staticmethod
    def _free_vector(ring, basis, col):
        where = {b: i for i, b in enumerate(basis)}
        v = np.zeros(len(basis), dtype=np.int64)
        for k, f in enumerate(col):
            for m, c in f._t.items():
                v[where[(k, m)]] = c
        return v

    def _apply_monomial(self, ring, variables, m, vec, deg):
        exps = ring.unpack(m)
        cur = vec % self.char
        n = deg
        for v, e in zip(variables, exps):
            for _ in range(e):
                if self.dims.get(n + 1, 0) == 0 or self.dims.get(n, 0) == 0:
                    return np.zeros(self.dims.get(deg + sum(exps), 0), dtype=np.int64)
                cur = (self.act(v, n) @ cur) % self.char
                n += 1
        return cur


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

_cache: dict = {}


def projection(I: Ideal) -> Projection:
    key = I.digest()
    P = _cache.get(key)
    if P is None:
        P = _cache.setdefault(key, Projection(I))
    return P


def default_window(I: Ideal) -> tuple[int, int]:
    P = projection(I)
    return (P.genus - 2, max(8, regularity(I) + 2))


def regularity(I: Ideal) -> int:
    """Castelnuovo-Mumford regularity of a curve ideal, read off its cohomology."""
    P = projection(I)
    m = 0  # h^3(I_C(n)) vanishes exactly for n >= -3
    sup = rao_support(P)
    if sup:
        m = max(m, sup[-1] + 2)
    # h^2(I_C(n)) = h^1(O_C(n)) is nonzero exactly up to n = max(spectrum) - 2
    m = max(m, max(P.spectrum) + 1)
    return m


def rao_support(P: Projection) -> list[int]:
    lo = min(P.spectrum)
    hi = max(P.hilb.regularity_index(), max(P.spectrum) - 1)
    return [n for n in range(lo, hi + 1) if P.h1_IC(n)]


@dataclass
class CohomologyTable:
    window: tuple[int, int]
    rows: dict[int, dict[str, int]]
    degree: int
    genus: int

    def column(self, key: str) -> list[int]:
        return [self.rows[n][key] for n in range(self.window[0], self.window[1] + 1)]

    def euler_ok(self) -> bool:
        d, g = self.degree, self.genus
        for n, r in self.rows.items():
            chi = _chi_O(n) - (d * n + 1 - g)
            if r["h0"] - r["h1"] + r["h2"] - r["h3"] != chi:
                return False
        return True

    def to_json(self) -> dict:
        return {"window": list(self.window),
                "rows": {str(n): r for n, r in sorted(self.rows.items())}}


def _chi_O(n: int) -> int:
    return (n + 3) * (n + 2) * (n + 1) // 6


def cohomology_table(I: Ideal, window: tuple[int, int] | None = None) -> CohomologyTable:
    P = projection(I)
    if not P.torsion_free:
        raise NotACurve("ideal does not define a locally Cohen-Macaulay curve")
    if window is None:
        window = default_window(I)
    rows = {}
    for n in range(window[0], window[1] + 1):
        h0O = P.h0_OC(n)
        hf = P.hf(n)
        rows[n] = {
            "h0": dim_S(n) - hf,
            "h1": h0O - hf,
            "h2": h0O - (P.degree * n + 1 - P.genus),
            "h3": dim_S(-n - 4),
            "h0_OC": h0O,
        }
    return CohomologyTable(tuple(window), rows, P.degree, P.genus)


def spectrum(I: Ideal) -> list[int]:
    P = projection(I)
    if not P.torsion_free:
        raise NotACurve("ideal does not define a locally Cohen-Macaulay curve")
    return list(P.spectrum)


def spectrum_from_h0(h0: dict[int, int]) -> Counter:
    """Second difference of n -> h0(O_C(n)) as a multiset."""
    out = Counter()
    ns = sorted(h0)
    for n in ns[2:]:
        v = h0[n] - 2 * h0.get(n - 1, 0) + h0.get(n - 2, 0)
        if v:
            out[n] = v
    return out


def spectrum_class(spec: Sequence[int], g: int) -> str:
    s = sorted(spec)
    if len(s) == 4 and s == sorted([g, 0, 1, 2]):
        return "extremal"
    if len(s) == 4 and s == sorted([g + 1, 0, 1, 1]):
        return "subextremal-spectrum"
    return "other"


def rao_module(I: Ideal) -> FiniteGradedModule:
    """H^1_*(I_C) with the action of x, y, z, w (coordinates after any projection change)."""
    P = projection(I)
    p = P.ring.char
    sup = rao_support(P)
    dims: dict[int, int] = {}
    quot: dict[int, tuple] = {}
    if not sup:
        return FiniteGradedModule({}, {v: {} for v in "xyzw"}, p)
    lo, hi = sup[0], sup[-1]
    for n in range(lo - 1, hi + 2):
        E, _ = P.ev_matrix(n)
        coords = P.dual_coords(n)
        if E.size:
            Rr, piv = rref(E.T, p)
        else:
            Rr, piv = np.zeros((0, len(coords)), dtype=np.int64), []
        free = [k for k in range(len(coords)) if k not in set(piv)]
        quot[n] = (Rr, piv, free)
        dims[n] = len(free)
        if dims[n] != P.h1_IC(n):
            raise RuntimeError(f"Rao dimension mismatch at degree {n}")

    def to_quot(v, n):
        Rr, piv, free = quot[n]
        w = v % p
        for i, c in enumerate(piv):
            if w[c]:
                w = (w - w[c] * Rr[i]) % p
        return w[free]

    def lift(n, k):
        _, _, free = quot[n]
        v = np.zeros(len(P.dual_coords(n)), dtype=np.int64)
        v[free[k]] = 1
        return v

    reg_deg = hi + 1  # first degree with h^1 = 0 above the support
    A = P.A
    actions: dict[str, dict[int, np.ndarray]] = {v: {} for v in "xyzw"}
    for n in range(lo, hi + 1):
        d0, d1 = dims.get(n, 0), dims.get(n + 1, 0)
        if not d0:
            continue
        for v in "zw":
            M = np.zeros((d1, d0), dtype=np.int64)
            var = A.var(v)
            for k in range(d0):
                vals = P.vector_dual(lift(n, k), n)
                img = P.dual_vector([var * f for f in vals], n + 1)
                if d1:
                    M[:, k] = to_quot(img, n + 1)
            actions[v][n] = M
        # x and y act through a power of z that lands in the image of S/I
        kpow = reg_deg - n
        E, basis = P.ev_matrix(n + kpow)
        zk = A.var("z") ** kpow
        for v in "xy":
            M = np.zeros((d1, d0), dtype=np.int64)
            var = P.ring.var(v)
            for k in range(d0):
                vals = P.vector_dual(lift(n, k), n)
                target = P.dual_vector([zk * f for f in vals], n + kpow)
                sol = solve(E, target, p)
                if sol is None:
                    raise RuntimeError("z-power multiple not in the image of S/I")
                s = P.ring.zero()
                for c, mono in zip(sol, basis):
                    if c:
                        s = s + mono.scale(int(c))
                xs = P.ev(var * s)
                vals1 = [exact_divide(f, zk) if f else f for f in xs]
                if d1:
                    M[:, k] = to_quot(P.dual_vector(vals1, n + 1), n + 1)
            actions[v][n] = M
    return FiniteGradedModule({n: d for n, d in dims.items() if d}, actions, p)


@dataclass
class RaoPresentation:
    dims: dict[int, int]
    annihilated_by_two_forms: bool
    annihilator: list[list[int]] = field(default_factory=list)
    betti: list[list[int]] | None = None
    j: int | None = None
    j_from_dims: int | None = None

    def to_json(self) -> dict:
        return {"dims": {str(k): v for k, v in sorted(self.dims.items())},
                "annihilated_by_two_forms": self.annihilated_by_two_forms,
                "annihilator": self.annihilator,
                "betti": self.betti, "j": self.j, "j_from_dims": self.j_from_dims}


def n_of_g(g: int) -> int:
    return (5 - g) // 2


def j_from_rao_dims(dims: dict[int, int], g: int) -> int | None:
    """Read j off the Rao Hilbert series: H(t)(1-t)^2 = t^{g+1} - 3t^2 + t^j + t^{5-g-j}."""
    if not dims:
        return None
    lo = min(min(dims), g + 1)
    hi = max(max(dims), 5 - g) + 3
    h = [dims.get(n, 0) for n in range(lo, hi + 1)]
    num = Counter()
    for i in range(len(h)):
        v = h[i] - 2 * (h[i - 1] if i >= 1 else 0) + (h[i - 2] if i >= 2 else 0)
        if v:
            num[lo + i] = v
    num[g + 1] -= 1
    num[2] += 3
    num = Counter({k: v for k, v in num.items() if v})
    if sum(num.values()) != 2 or any(v < 0 for v in num.values()):
        return None
    exps = sorted(num.elements())
    if exps[0] + exps[1] != 5 - g:
        return None
    return exps[0]


def rao_presentation(I: Ideal) -> RaoPresentation:
    P = projection(I)
    if not P.torsion_free:
        raise NotACurve("ideal does not define a locally Cohen-Macaulay curve")
    M = rao_module(I)
    ann = M.annihilating_forms("xyzw")
    flag = ann.shape[0] >= 2
    pres = RaoPresentation(dict(M.dims), flag, [list(map(int, r)) for r in ann])
    pres.j_from_dims = j_from_rao_dims(M.dims, P.genus)
    if not flag or not M.dims:
        return pres
    # choose two coordinates completing the annihilating forms to a basis
    variables = _complement_pair(ann[:2], P.ring.char)
    if variables is None:
        return pres
    SL = line_ring(P.ring.char)
    pm = M.presentation(SL, variables)
    g = P.genus
    # the last syzygies sit in degrees up to 3 - g
    C = free_resolution(pm, max_degree=max(max(pm.col_degrees, default=0) + 4, 6 - g))
    pres.betti = C.modules
    if (len(C.modules) == 3 and C.modules[0] == [g + 1] and sorted(C.modules[1]) == [2, 2, 2]
            and len(C.modules[2]) == 2):
        a, b = sorted(C.modules[2])
        if a + b == 5 - g:
            pres.j = a
    elif (len(C.modules) == 3 and C.modules[0] == [g + 1] and sorted(C.modules[1]) == [2, 2]
            and C.modules[2] == [3 - g]):
        # j = 2: the summand S_L(-2) cancels against one S_L(-2) in a minimal resolution
        pres.j = 2
    return pres


def _complement_pair(forms: np.ndarray, p: int):
    names = "xyzw"
    for pair in (("z", "w"), ("y", "w"), ("y", "z"), ("x", "w"), ("x", "z"), ("x", "y")):
        rows = [list(map(int, f)) for f in forms]
        for v in pair:
            rows.append([int(n == v) for n in names])
        if rank(np.array(rows), p) == 4:
            return pair
    return None


@dataclass
class CurveRecord:
    saturated: bool
    pure_dim_one: bool
    locally_cm: bool
    degree: int | None = None
    genus: int | None = None
    spectrum: list[int] | None = None
    spectrum_class: str | None = None
    reason: str = ""

    @property
    def is_curve(self) -> bool:
        return self.saturated and self.pure_dim_one and self.locally_cm

    def to_json(self) -> dict:
        return {"is_curve": self.is_curve, "saturated": self.saturated,
                "pure_dim_one": self.pure_dim_one, "locally_cm": self.locally_cm,
                "degree": self.degree, "genus": self.genus, "spectrum": self.spectrum,
                "spectrum_class": self.spectrum_class, "reason": self.reason}


def is_curve(I: Ideal) -> CurveRecord:
    H = hilbert(I)
    if H.dimension != 2:
        sat = saturate_irrelevant(I) == I if I.gens else True
        return CurveRecord(sat, False, False, reason=f"projective dimension {H.dimension - 1}, not 1")
    sat = saturate_irrelevant(I) == I
    P = projection(I)
    rec = CurveRecord(sat, P.torsion_free, sat and P.torsion_free, P.degree, P.genus)
    if not sat:
        rec.reason = "ideal is not saturated"
    elif not P.torsion_free:
        rec.reason = "scheme has embedded or isolated points"
    else:
        rec.spectrum = list(P.spectrum)
        rec.spectrum_class = spectrum_class(P.spectrum, P.genus)
    return rec


def curve_part(I: Ideal, max_extra: int = 30) -> Ideal:
    """Ideal of the purely one-dimensional, locally Cohen-Macaulay part of V(I).

    This is the kernel of S -> H^0_*(O) through the torsion-free quotient, built
    degree by degree until the ideal generated is saturated with the expected
    Hilbert polynomial.
    """
    P = projection(I)
    R, p = P.ring, P.ring.char
    target_genus = 1 - (P.degree - sum(P.spectrum))
    gens: list[Poly] = []
    start = 1  # the saturation may have generators below those of I
    top = max(g.degree() for g in I.gens)
    change_back = None
    if P.change is not None:
        a, b, c, d = P.change
        x, y, z, w = R.gens()
        change_back = {"z": z - x.scale(a) - y.scale(b), "w": w - x.scale(c) - y.scale(d)}
    for n in range(start, top + max_extra + 1):
        mons = [R.monomial(R.unpack(m)) for m in R.monomials(n)]
        cols = [P.dual_vector(P.ev(f), n) for f in mons]
        E = np.array(cols, dtype=np.int64).T.reshape(len(P.dual_coords(n)), len(mons))
        K = nullspace(E, p) if E.shape[0] else np.eye(len(mons), dtype=np.int64)
        if K.shape[0] == 0:
            continue
        span = [coeff_vector(f, n) for f in _multiples(gens, n)]
        Sp = np.array(span, dtype=np.int64) if span else np.zeros((0, len(mons)), dtype=np.int64)
        Rr, piv = rref(Sp, p) if Sp.size else (np.zeros((0, len(mons)), dtype=np.int64), [])
        if len(piv) < K.shape[0]:
            mon_list = R.monomials(n)
            for v in K:
                w = v % p
                for i, c in enumerate(piv):
                    if w[c]:
                        w = (w - w[c] * Rr[i]) % p
                if np.any(w):
                    gens.append(Poly._raw(R, {mon_list[k]: int(c) for k, c in enumerate(w) if c}))
                    Rr, piv = rref(np.vstack([Rr, w]), p)
        if n >= top and gens:
            J = Ideal(R, gens)
            H = hilbert(J)
            if H.dimension == 2:
                pp = H.poly + [0] * 2
                if int(pp[1]) == P.degree and int(1 - pp[0]) == target_genus and saturate_irrelevant(J) == J:
                    if change_back:
                        J = Ideal(R, [linear_change(f, change_back) for f in J.gens])
                    return J
    raise RuntimeError("curve part did not stabilize")


def _multiples(gens: list[Poly], n: int) -> list[Poly]:
    out = []
    for g in gens:
        d = g.degree()
        for m in g.ring.monomials(n - d):
            out.append(g.shift(m))
    return out


def mult_image_dim(V: Sequence[Poly], L: Sequence[Poly]) -> int:
    """dim of span{v * l : v in V, l in L_1} for a codimension-two linear ideal L."""
    if not V:
        return 0
    R = V[0].ring
    d = V[0].degree()
    if any(not v.is_homogeneous() or v.degree() != d for v in V):
        raise ValueError("V must consist of forms of one degree")
    if rank(np.array([coeff_vector(v, d) for v in V]), R.char) != len(V):
        raise ValueError("V is linearly dependent")
    lin = [l for l in L if l]
    if len(lin) != 2 or rank(np.array([coeff_vector(l, 1) for l in lin]), R.char) != 2:
        raise ValueError("L must be generated by two independent linear forms")
    rows = [coeff_vector(v * l, d + 1) for v in V for l in lin]
    return rank(np.array(rows), R.char)


# ---------------------------------------------------------------------------
# independent route: graded local duality from a free resolution
# ---------------------------------------------------------------------------

def ext_dims(C: GradedComplex, i: int, e: int) -> int:
    """dim Ext^i_S(S/I, S)_e from the dual of a free resolution."""
    from .modules import degree_matrix

    p = C.ring.char
    mods = C.modules
    if i >= len(mods):
        return 0
    size = sum(dim_S(e + d) for d in mods[i])
    r_out = 0
    if i + 1 < len(mods):
        D = C.maps[i].transpose()
        Mt = degree_matrix(D, e)
        r_out = rank(Mt, p) if Mt.size else 0
    r_in = 0
    if i >= 1:
        D = C.maps[i - 1].transpose()
        Mt = degree_matrix(D, e)
        r_in = rank(Mt, p) if Mt.size else 0
    return size - r_out - r_in


def cohomology_via_ext(I: Ideal, window: tuple[int, int], resolution: GradedComplex | None = None) -> dict[int, dict[str, int]]:
    """h^1 and h^2 of I_C(n) as dim Ext^3 and Ext^2 in degree -n-4."""
    C = resolution or free_resolution(I)
    out = {}
    for n in range(window[0], window[1] + 1):
        out[n] = {"h1": ext_dims(C, 3, -n - 4), "h2": ext_dims(C, 2, -n - 4),
                  "h0": graded_slice_dim(I.gens, n) if n >= 0 else 0}
    return out


def cohomology_report(I: Ideal, window=None) -> dict:
    T = cohomology_table(I, window)
    P = projection(I)
    rao = rao_presentation(I)
    return {
        "ideal_hash": I.digest(),
        "degree": P.degree,
        "genus": P.genus,
        "window": list(T.window),
        "tables": T.to_json()["rows"],
        "spectrum": list(P.spectrum),
        "rao": {"dims": {str(k): v for k, v in sorted(rao.dims.items())}, "j": rao.j},
    }
