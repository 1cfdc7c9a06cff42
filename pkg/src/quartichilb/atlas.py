"""Constructors for the explicit curves: multiple lines, unions, extremal curves.

Every constructor returns a saturated ideal in k[x,y,z,w].  Multiple structures
are supported on the line Y = {x = y = 0} unless stated otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cohomology import NotACurve, curve_part, is_curve
from .graded import coeff_vector, degree_part_matrix
from .hilbert import degree_genus, hilbert
from .ideal import (Ideal, family_ring, intersect, intersect_all, line_ring, minimal_generators,
                    saturate_irrelevant, standard_ring, write_ideal)
from .linalg import complement_rows, nullspace, rank
from .modules import PolyMatrix, syzygies
from .ring import DEFAULT_CHAR, Poly, Ring, substitute


class ConstructionError(ValueError):
    """Parameters outside the range where the construction exists."""


def _S(char: int = DEFAULT_CHAR) -> Ring:
    return standard_ring(char)


def _poly(R: Ring, f) -> Poly:
    if isinstance(f, Poly):
        return R.convert(f) if f.ring != R else f
    return R(f)


def support_line(char: int = DEFAULT_CHAR) -> Ideal:
    S = _S(char)
    return Ideal(S, ["x", "y"])


# -- binary forms -------------------------------------------------------------

def _binary_coeffs(f: Poly, u: str, v: str) -> list[int]:
    """Coefficients of a binary form in u, v, from u^d down to v^d."""
    R = f.ring
    if not f:
        return []
    d = f.total_degree()
    iu, iv = R.index(u), R.index(v)
    out = [0] * (d + 1)
    for m, c in f._t.items():
        e = R.unpack(m)
        if any(x for k, x in enumerate(e) if k not in (iu, iv)) or e[iu] + e[iv] != d:
            raise ConstructionError(f"{f} is not a binary form in {u}, {v}")
        out[e[iv]] = c
    return out


def binary_resultant_vanishes(f: Poly, g: Poly, u: str = "z", v: str = "w") -> bool:
    """True iff the binary forms f, g have a common zero on P^1 (Sylvester rank test)."""
    if not f or not g:
        return True
    a, b = _binary_coeffs(f, u, v), _binary_coeffs(g, u, v)
    m, n = len(a) - 1, len(b) - 1
    if m == 0 or n == 0:
        return False
    N = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (N - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (N - n - 1 - i))
    return rank(np.array(rows, dtype=np.int64), f.ring.char) < N


def _binary_forms(R: Ring, forms, degree: int, what: str) -> list[Poly]:
    out = []
    for f in forms:
        f = _poly(R, f)
        if f and (not f.is_homogeneous() or f.degree() != degree or f.variables_used() - {"z", "w"}):
            raise ConstructionError(f"{what}: {f} is not a form of degree {degree} in z, w")
        out.append(f)
    return out


def _add_new(gens: list[Poly], cands: Sequence[Poly], n: int) -> None:
    """Append to gens those candidates of degree n not in the span of existing multiples."""
    if not cands:
        return
    R = cands[0].ring
    old = [g for g in gens if g.degree() <= n]
    span = degree_part_matrix(old, n) if old else np.zeros((0, len(R.monomials(n))), dtype=np.int64)
    vecs = np.array([coeff_vector(f, n) for f in cands], dtype=np.int64)
    for i in complement_rows(span, vecs, R.char):
        gens.append(cands[i])


# -- double lines and Ferrand doubling -------------------------------------------

def double_line(a: int, f=None, g=None, char: int = DEFAULT_CHAR) -> Ideal:
    """Double structure (x^2, xy, y^2, xg - yf) of genus -a-1 on x = y = 0."""
    if a < -1:
        raise ConstructionError("double line needs a >= -1")
    S = _S(char)
    f = _poly(S, f if f is not None else f"z^{a + 1}")
    g = _poly(S, g if g is not None else f"w^{a + 1}")
    _binary_forms(S, [f, g], a + 1, "double_line")
    if a == -1:
        if not f and not g:
            raise ConstructionError("f and g both vanish")
    elif binary_resultant_vanishes(f, g):
        raise ConstructionError("f and g have a common zero: the ideal has an embedded point")
    x, y = S.var("x"), S.var("y")
    return Ideal(S, [x * x, x * y, y * y, x * g - y * f])


_KNOWN_PARAMS = {
    (("x",), ("y",)): ("0", "0", "s", "t"),
    (("w",), ("x*z - y^2",)): ("s^2", "s*t", "t^2", "0"),
}


def _parametrization(I_C: Ideal, param) -> tuple[list[Poly], Ring]:
    T = Ring(("s", "t"), I_C.ring.char)
    if param is None:
        for (l1, l2), images in _KNOWN_PARAMS.items():
            if I_C == Ideal(I_C.ring, list(l1 + l2)):
                param = images
                break
        else:
            raise ConstructionError("no parametrization known for this curve; pass param=")
    imgs = [_poly(T, p) for p in param]
    degs = {f.degree() for f in imgs if f}
    if len(imgs) != 4 or len(degs) != 1:
        raise ConstructionError("parametrization must be four binary forms of one degree")
    return imgs, T


def _evaluate(f: Poly, imgs: list[Poly], T: Ring, cache: dict) -> Poly:
    out = T.zero()
    R = f.ring
    for m, c in f._t.items():
        val = cache.get(m)
        if val is None:
            val = T.one()
            for img, e in zip(imgs, R.unpack(m)):
                if e:
                    val = val * img**e
            cache[m] = val
        out = out + val.scale(c)
    return out


def ferrand_double(I_C: Ideal, m: int, u, v, param=None, max_degree: int | None = None) -> Ideal:
    """Double structure on a line or conic C from a surjection of the conormal sheaf.

    C = V(g1, g2) is parametrized by P^1 through ``param``.  The map sends
    g1 -> u and g2 -> v, binary forms in s, t of degrees m + e*deg(g_i)
    (e = deg C), onto O_{P^1}(m).  The doubled curve has genus -m-1.  Its
    ideal is built one degree at a time as the kernel of that map on (I_C)_n,
    and the search stops once the ideal is saturated with the expected
    Hilbert polynomial.
    """
    R = I_C.ring
    imgs, T = _parametrization(I_C, param)
    e = imgs[0].degree() if imgs[0] else max(f.degree() for f in imgs if f)
    gens_C = sorted(minimal_generators(I_C).gens, key=lambda f: (f.degree(), -f.lm))
    if len(gens_C) != 2:
        raise ConstructionError("C must be a complete intersection of two forms")
    cache: dict = {}
    for q in gens_C:
        if _evaluate(q, imgs, T, cache):
            raise ConstructionError("parametrization does not lie on C")
    d1, d2 = (q.degree() for q in gens_C)
    u, v = _poly(T, u), _poly(T, v)
    if not u or not v or u.degree() != m + e * d1 or v.degree() != m + e * d2:
        raise ConstructionError(f"u, v must be binary forms of degrees {m + e * d1}, {m + e * d2}")
    if binary_resultant_vanishes(u, v, "s", "t"):
        raise ConstructionError("(u, v) has a common zero: the map is not surjective")
    deg_C = e
    target = (2 * deg_C, -m - 1)
    top = max_degree or (2 * (m + e * d2) + 8)
    gens: list[Poly] = []
    p = R.char
    for n in range(1, top + 1):
        blocks = []
        for q, img in ((gens_C[0], u), (gens_C[1], v)):
            for mono in R.monomials(n - q.degree()) if n >= q.degree() else []:
                mp = R.monomial(R.unpack(mono))
                blocks.append((mp * q, _evaluate(mp, imgs, T, cache) * img))
        if not blocks:
            continue
        tdeg = e * n + m
        cols = np.array([coeff_vector(b, tdeg) if b else np.zeros(len(T.monomials(tdeg)), dtype=np.int64)
                         for _, b in blocks], dtype=np.int64).T
        K = nullspace(cols, p)
        cands = []
        for vec in K:
            h = R.zero()
            for c, (poly, _) in zip(vec, blocks):
                if c:
                    h = h + poly.scale(int(c))
            if h:
                cands.append(h)
        before = len(gens)
        _add_new(gens, cands, n)
        if len(gens) > before and n >= 2:
            J = Ideal(R, gens)
            H = hilbert(J)
            if H.dimension == 2 and degree_genus(J) == target and saturate_irrelevant(J) == J:
                return J
    raise ConstructionError("doubling did not stabilize below the degree bound")


def double_conic(g: int, char: int = DEFAULT_CHAR) -> Ideal:
    """Double structure of genus g on the conic w = xz - y^2 = 0 (m = -g-1 >= 0)."""
    m = -g - 1
    if m < 0:
        raise ConstructionError("double conics built here have genus <= -1")
    S = _S(char)
    return ferrand_double(Ideal(S, ["w", "x*z - y^2"]), m, f"s^{m + 2}", f"t^{m + 4}")


# -- triple lines --------------------------------------------------------------

def _check_double_line(I_Z: Ideal, I_Y: Ideal) -> int:
    d, g = degree_genus(I_Z)
    if d != 2 or not I_Y.contains_ideal(I_Z):
        raise ConstructionError("I_Z is not a double structure on the support line")
    return -1 - g


def phi_triple(I_Z: Ideal, h, I_Y: Ideal | None = None) -> Ideal:
    """Quasiprimitive triple line: the curve part of V(I_Y*I_Z, h)."""
    S = I_Z.ring
    I_Y = I_Y or Ideal(S, ["x", "y"])
    h = _poly(S, h)
    _check_double_line(I_Z, I_Y)
    if not h.is_homogeneous():
        raise ConstructionError("h must be a form")
    if not I_Z.contains(h):
        raise ConstructionError("h is not in I_Z")
    if (I_Y**2).contains(h):
        raise ConstructionError("h lies in I_Y^2")
    I = Ideal(S, [f * g for f in I_Y.gens for g in I_Z.gens] + [h])
    I = minimal_generators(I)
    if is_curve(I).is_curve:
        return I
    return minimal_generators(curve_part(I))


def triple_line_type(I_W: Ideal, I_Y: Ideal | None = None) -> tuple[int, int]:
    """(a, b) of a quasiprimitive triple line, read from the genera of Z and W."""
    S = I_W.ring
    I_Y = I_Y or Ideal(S, ["x", "y"])
    d, g = degree_genus(I_W)
    if d != 3:
        raise ConstructionError("not a triple line")
    Z = curve_part(I_W + I_Y**2)
    a = -1 - degree_genus(Z)[1]
    return a, -3 * a - 2 - g


def multiline_type(I_C: Ideal, I_Y: Ideal | None = None) -> tuple[int, ...]:
    """Type of a quasiprimitive multiple line from its Cohen-Macaulay filtration.

    The filtration pieces are the curve parts of C ∩ Y^(k); their genera give
    the type through g(Z) = -a-1, g(W) = -3a-b-2, g(C) = -6a-b-c-3.
    """
    S = I_C.ring
    I_Y = I_Y or Ideal(S, ["x", "y"])
    d, g = degree_genus(I_C)
    if d == 2:
        return (-1 - g,)
    Z = curve_part(I_C + I_Y**2)
    dz, gz = degree_genus(Z)
    if dz != 2:
        raise ConstructionError("not quasiprimitive: C ∩ Y^(2) is not a double line")
    a = -1 - gz
    if d == 3:
        return a, -3 * a - 2 - g
    W = curve_part(I_C + I_Y**3)
    dw, gw = degree_genus(W)
    if d != 4 or dw != 3:
        raise ConstructionError("not a quasiprimitive 4-line")
    b = -3 * a - 2 - gw
    return a, b, -6 * a - b - 3 - g


def is_thick(I_C: Ideal, I_Y: Ideal | None = None) -> bool:
    """I_Y^3 ⊆ I_C ⊆ I_Y^2: the curve contains the first infinitesimal neighbourhood."""
    S = I_C.ring
    I_Y = I_Y or Ideal(S, ["x", "y"])
    return (I_Y**2).contains_ideal(I_C) and I_C.contains_ideal(I_Y**3)


# -- thick 4-lines -------------------------------------------------------------

def thick_4line(g: int, p1, p2, p3, char: int = DEFAULT_CHAR) -> Ideal:
    """Thick 4-line of genus g from forms p1, p2, p3 of degree 1-g on the line.

    I = I_Y^3 + {alpha x^2 + beta xy + gamma y^2 : alpha p1 + beta p2 + gamma p3 = 0},
    the pullback of the syzygies of (p1, p2, p3) over k[z, w].
    """
    if g > 1:
        raise ConstructionError("thick 4-lines have genus <= 1")
    S = _S(char)
    SL = line_ring(char)
    ps = [SL.convert(f) for f in _binary_forms(S, [p1, p2, p3], 1 - g, "thick_4line")]
    nz = [f for f in ps if f]
    if not nz or hilbert(Ideal(SL, nz)).dimension > 0:
        raise ConstructionError("p1, p2, p3 have a common zero on the line: the map is not surjective")
    row = PolyMatrix(SL, [ps], [0], [1 - g] * 3)
    K = syzygies(row)
    x, y = S.var("x"), S.var("y")
    quad = [x * x, x * y, y * y]
    gens = [x**3, x * x * y, x * y * y, y**3]
    for j in range(K.ncols):
        gens.append(sum((S.convert(K[i, j]) * quad[i] for i in range(3) if K[i, j]), S.zero()))
    return minimal_generators(Ideal(S, gens))


def thick_witness(g: int, j: int, char: int = DEFAULT_CHAR) -> Ideal:
    """Thick 4-line from the surjection (w^{1-g}, w^{3-g-j} z^{j-2}, z^{1-g})."""
    if not 2 <= j <= 3 - g:
        raise ConstructionError("need 2 <= j <= 3 - g")
    return thick_4line(g, f"w^{1 - g}", f"w^{3 - g - j}*z^{j - 2}", f"z^{1 - g}", char)


def general_thick_4line(g: int, seed: int = 0, char: int = DEFAULT_CHAR) -> Ideal:
    """Thick 4-line from seeded random forms (a general member)."""
    import random

    rng = random.Random(seed)
    S = _S(char)
    d = 1 - g
    while True:
        forms = []
        for _ in range(3):
            f = S.zero()
            for k in range(d + 1):
                f = f + S.monomial((0, 0, d - k, k), rng.randrange(char))
            forms.append(f)
        try:
            return thick_4line(g, *forms, char=char)
        except ConstructionError:
            continue


# -- the thin-to-thick family ----------------------------------------------------

@dataclass
class ThinToThick:
    """Matrices of the family of triple lines W_t and the map P : F_1 -> R(3a+c).

    With f = z^{a+1} and g = w^{a+1}, the family is over k[t] (t of weight 0).
    """

    a: int
    b: int
    c: int
    char: int = DEFAULT_CHAR

    def __post_init__(self):
        if self.a < 0 or not 0 <= self.b <= self.c:
            raise ConstructionError("need a >= 0 and 0 <= b <= c")

    @property
    def F1(self) -> list[int]:
        a, b = self.a, self.b
        return [3, 3, 3, 3, a + 3, a + 3, a + b + 2]

    @property
    def F2(self) -> list[int]:
        a, b = self.a, self.b
        return [4, 4, 4] + [a + 4] * 4 + [a + b + 3] * 2

    @property
    def F3(self) -> list[int]:
        a, b = self.a, self.b
        return [a + 5, a + 5, a + b + 4]

    @property
    def target_twist(self) -> int:
        return 3 * self.a + self.c

    @property
    def genus(self) -> int:
        return -6 * self.a - self.b - self.c - 3

    def ring(self) -> Ring:
        return family_ring(self.char)

    def matrices(self, t0: int | None = None):
        """(M1, M2, M3, P) over k[t][x,y,z,w], or over k[x,y,z,w] at t = t0."""
        a, b, c = self.a, self.b, self.c
        R = self.ring()
        x, y, z, w, t = R.gens()
        f, g = z ** (a + 1), w ** (a + 1)
        q = x * g - y * f
        zab, twb = z ** (a + b), t * w**b
        O = R.zero()
        M1 = [[x**3, x * x * y, x * y * y, y**3, x * q, y * q, x * x * zab + twb * q]]
        M2 = [
            [y, O, O, -g, O, O, O, zab, O],
            [-x, y, O, f, -g, O, O, O, zab],
            [O, -x, y, O, f, -g, O, O, O],
            [O, O, -x, O, O, f, O, O, O],
            [O, O, O, x, y, O, -y, twb, O],
            [O, O, O, O, O, y, x, O, twb],
            [O, O, O, O, O, O, O, -x, -y],
        ]
        M3 = [
            [g, O, zab],
            [-f, g, O],
            [O, -f, O],
            [y, O, O],
            [-x, y, O],
            [O, -x, O],
            [O, y, -twb],
            [O, O, -y],
            [O, O, x],
        ]
        k = -t * z ** (c - b) * w**b
        P = [[k * f**3, k * f * f * g, k * f * g * g, k * g**3,
              z ** (4 * a + c + 3), z ** (3 * a + c + 2) * w ** (a + 1), w ** (4 * a + b + c + 2)]]
        mats = [(M1, [0], self.F1), (M2, self.F1, self.F2), (M3, self.F2, self.F3),
                (P, [-self.target_twist], self.F1)]
        if t0 is not None:
            S = _S(self.char)
            mats = [([[_at(e, t0, S) for e in row] for row in M], rd, cd) for M, rd, cd in mats]
            R = S
        return tuple(PolyMatrix(R, M, rd, cd) for M, rd, cd in mats)

    def triple_line(self, t0: int) -> Ideal:
        M1 = self.matrices(t0)[0]
        return Ideal(M1.ring, M1.rows[0])

    def fiber(self, t0: int) -> Ideal:
        """C_{t0} = ker(I_W -> O_L(3a+c)), as the saturation of I_Y*I_W plus syzygy lifts."""
        M1, _, _, P = self.matrices(t0)
        S = M1.ring
        SL = line_ring(self.char)
        pbar = [SL.convert(substitute(substitute(e, "x", 0, drop=False), "y", 0, drop=False)) for e in P.rows[0]]
        row = PolyMatrix(SL, [pbar], P.row_degrees, P.col_degrees)
        K = syzygies(row, stop_rank=6)
        m = M1.rows[0]
        x, y = S.var("x"), S.var("y")
        gens = [x * e for e in m] + [y * e for e in m]
        for j in range(K.ncols):
            gens.append(sum((S.convert(K[i, j]) * m[i] for i in range(7) if K[i, j]), S.zero()))
        J = Ideal(S, [h for h in gens if h])
        return minimal_generators(saturate_irrelevant(J))


def _at(f: Poly, t0: int, S: Ring) -> Poly:
    return S.convert(substitute(f, "t", t0)) if f else S.zero()


def quasiprimitive_4line(a: int, b: int, c: int, t0: int = 1, char: int = DEFAULT_CHAR) -> Ideal:
    """Quasiprimitive 4-line of type (a, b, c): the fibre at t0 != 0 of the thin-to-thick family."""
    if t0 % char == 0:
        raise ConstructionError("t0 must be nonzero")
    return ThinToThick(a, b, c, char).fiber(t0)


# -- extremal curves -------------------------------------------------------------

def extremal_triple_line(g: int, char: int = DEFAULT_CHAR) -> Ideal:
    """(x^2, xy, y^3, x z^{3-g} - y^2 w^{2-g}): the triple line limit, genus g-2."""
    if g > 0:
        raise ConstructionError("need g <= 0")
    S = _S(char)
    return Ideal(S, ["x^2", "x*y", "y^3", f"x*z^{3 - g} - y^2*w^{2 - g}"])


def extremal_quartic(g: int, char: int = DEFAULT_CHAR) -> Ideal:
    """Extremal curve of degree 4 and genus g: the triple line above union the line x = w = 0."""
    T = extremal_triple_line(g, char)
    return minimal_generators(intersect(T, Ideal(T.ring, ["x", "w"])))


def extend_limit(a: int, b: int, char: int = DEFAULT_CHAR) -> Ideal:
    """(x^2, xy, y^3, x z^{3a+b+3} - y^2 w^{3a+b+2}) ∩ (x, w)."""
    S = _S(char)
    k = 3 * a + b
    I0 = Ideal(S, ["x^2", "x*y", "y^3", f"x*z^{k + 3} - y^2*w^{k + 2}"])
    return minimal_generators(intersect(I0, Ideal(S, ["x", "w"])))


# -- unions ----------------------------------------------------------------------

@dataclass
class UnionReport:
    ideal: Ideal
    degree: int
    genus: int
    length: int
    length_from_genus: int
    parts: list[tuple[int, int]]

    @property
    def consistent(self) -> bool:
        return self.length == self.length_from_genus

    def to_json(self) -> dict:
        return {"degree": self.degree, "genus": self.genus, "length": self.length,
                "length_from_genus": self.length_from_genus, "parts": self.parts,
                "ideal_hash": self.ideal.digest()}


def intersection_length(I: Ideal, J: Ideal) -> int:
    """Length of the zero-dimensional scheme V(I) ∩ V(J); raises if it is a curve."""
    K = saturate_irrelevant(I + J)
    H = hilbert(K)
    if H.dimension >= 2:
        raise ConstructionError("the curves share a one-dimensional component")
    return int(H.poly[0]) if H.dimension == 1 else 0


def union_curves(I: Ideal, J: Ideal, check: bool = True) -> UnionReport:
    """Schematic union with the length of the intersection, computed two ways."""
    if check:
        for K in (I, J):
            rec = is_curve(K)
            if not rec.is_curve:
                raise NotACurve(rec.reason)
    length = intersection_length(I, J)
    U = minimal_generators(intersect(I, J))
    d, g = degree_genus(U)
    (dI, gI), (dJ, gJ) = degree_genus(I), degree_genus(J)
    return UnionReport(U, d, g, length, g - gI - gJ + 1, [(dI, gI), (dJ, gJ)])


# -- triple line union a line ------------------------------------------------------

WL_KINDS = ("F1", "F2", "F3", "F4")


@dataclass
class WLData:
    """A quasiprimitive triple line W = (I_Y I_Z, h) of type (a, b) and a line L."""

    kind: str
    a: int
    b: int
    g: int
    Z: Ideal
    h: Poly
    L: Ideal
    W: Ideal | None = None


def wl_range_ok(kind: str, a: int, g: int) -> bool:
    if a < 0:
        return False
    if kind == "F1":
        return 3 * a <= -g
    return 3 * a < -g - 1


def _wl_check(kind: str, a: int, g: int):
    if kind not in WL_KINDS:
        raise ConstructionError(f"unknown family {kind}")
    if not wl_range_ok(kind, a, g):
        bound = "a <= -g/3" if kind == "F1" else "a < (-g-1)/3"
        raise ConstructionError(f"{kind} is empty for a={a}, g={g}: need 0 <= {bound}")


def _wl_Z(a: int, char: int) -> tuple[Ideal, Poly]:
    S = _S(char)
    Z = double_line(a, f=f"w^{a + 1}", g=f"z^{a + 1}", char=char)
    q = S(f"x*z^{a + 1} - y*w^{a + 1}")
    return Z, q


def wl_witness(kind: str, a: int, g: int, char: int = DEFAULT_CHAR) -> WLData:
    """The F1 / F3 witnesses: Z = ((x,y)^2, x z^{a+1} - y w^{a+1}),
    h = z^b (x z^{a+1} - y w^{a+1}) - x^2 w^{a+b}, with L = (x, w) for F1 and L = (x, z) for F3."""
    _wl_check(kind, a, g)
    if kind not in ("F1", "F3"):
        raise ConstructionError("witnesses exist for F1 and F3; F2 and F4 are limits")
    S = _S(char)
    b = -3 * a - g if kind == "F1" else -3 * a - g - 1
    Z, q = _wl_Z(a, char)
    h = S(f"z^{b}") * q - S(f"x^2*w^{a + b}")
    L = Ideal(S, ["x", "w"] if kind == "F1" else ["x", "z"])
    return WLData(kind, a, b, g, Z, h, L)


def wl_special(kind: str, a: int, g: int, char: int = DEFAULT_CHAR) -> WLData:
    """The F2 (resp. F4) datum W0 of type (a, b-1) meeting L in length 2 (resp. 1)."""
    S = _S(char)
    base = "F1" if kind == "F2" else "F3"
    _wl_check(kind, a, g)
    wit = wl_witness(base, a, g, char)
    b0 = wit.b - 1
    Z, q = _wl_Z(a, char)
    if kind == "F2":
        h0 = S(f"z^{b0}") * q - S(f"x^2*w^{a + b0}") + S(f"y^2*z^{a + b0}")
    else:
        # the y^2 term keeps the q'-coefficient and the x^2, xy, y^2 part without a common zero
        h0 = S(f"w^{b0}") * q + S(f"y^2*z^{a + b0}")
    return WLData(kind, a, b0, g, Z, h0, wit.L)


def wl_triple(data: WLData) -> Ideal:
    if data.W is None:
        data.W = phi_triple(data.Z, data.h)
    return data.W


def wl_family_member(kind: str, a: int, g: int, char: int = DEFAULT_CHAR) -> Ideal:
    """Representative W ∪ L of F1..F4; F2 and F4 are produced as flat limits."""
    _wl_check(kind, a, g)
    if kind in ("F1", "F3"):
        d = wl_witness(kind, a, g, char)
        return minimal_generators(intersect(wl_triple(d), d.L))
    from .deformation import flat_limit_zero

    return flat_limit_zero(wl_closure_family(kind, a, g, char))


# -- families ------------------------------------------------------------------------

@dataclass
class CurveFamily:
    """Ideal over k[t][x,y,z,w] with t the deformation parameter."""

    name: str
    ideal: Ideal
    parameters: dict = field(default_factory=dict)
    generic: str = ""
    special: str = ""
    param: str = "t"

    def fiber_generators(self, t0: int) -> list[Poly]:
        S = _S(self.ideal.ring.char)
        return [S.convert(substitute(f, self.param, t0)) for f in self.ideal.gens]


def extend_family(a: int, b: int, char: int = DEFAULT_CHAR) -> CurveFamily:
    """W_t ∪ L with I_t = ((x,y)^3, (x,y) q_t, z^b t^2 q_t - x^2 w^{a+b}), q_t = x z^{a+1} - t y w^{a+1}."""
    if a < 0 or b < 0:
        raise ConstructionError("need a, b >= 0")
    R = family_ring(char)
    qt = R(f"x*z^{a + 1} - t*y*w^{a + 1}")
    x, y = R.var("x"), R.var("y")
    gens = [x**3, x * x * y, x * y * y, y**3, x * qt, y * qt, R(f"z^{b}*t^2") * qt - R(f"x^2*w^{a + b}")]
    J = intersect(Ideal(R, gens), Ideal(R, ["x", "w"]))
    return CurveFamily("extend", J, {"a": a, "b": b},
                       "W_t ∪ L, W_t quasiprimitive of type (a, b), length(W ∩ L) = 3",
                       "extremal curve")


def wl_closure_family(kind: str, a: int, g: int, char: int = DEFAULT_CHAR) -> CurveFamily:
    """(I_Y I_Z, (1-t) l h0 + t h) ∩ I_L, l the linear form with I_L = (x, l)."""
    if kind not in ("F2", "F4"):
        raise ConstructionError("closure families exist for F2 in F1-bar and F4 in F3-bar")
    _wl_check(kind, a, g)
    base = "F1" if kind == "F2" else "F3"
    wit = wl_witness(base, a, g, char)
    sp = wl_special(kind, a, g, char)
    R = family_ring(char)
    ell = R.convert(wit.L.gens[1])
    t = R.var("t")
    ht = (R.one() - t) * ell * R.convert(sp.h) + t * R.convert(wit.h)
    IY = [R.var("x"), R.var("y")]
    gens = [u * R.convert(v) for u in IY for v in wit.Z.gens] + [ht]
    J = intersect(Ideal(R, gens), Ideal(R, [R.convert(f) for f in wit.L.gens]))
    return CurveFamily(f"{kind}-closure", J, {"kind": kind, "a": a, "g": g},
                       f"{base} member W_t ∪ L", f"{kind} member W_0 ∪ L")


# -- further representatives ----------------------------------------------------------

def double_line_two_lines(g: int, char: int = DEFAULT_CHAR) -> Ideal:
    """Double line of genus g-2 with two disjoint lines, each meeting it in length 2."""
    Z = double_line(1 - g, char=char)
    S = Z.ring
    return minimal_generators(intersect_all([Z, Ideal(S, ["y", "w"]), Ideal(S, ["x", "z"])]))


def double_line_conic(g: int, char: int = DEFAULT_CHAR) -> Ideal:
    """Double line of genus g-1 and a smooth conic meeting it in length 2."""
    Z = double_line(-g, char=char)
    S = Z.ring
    return minimal_generators(intersect(Z, Ideal(S, ["w", "y*z - x^2"])))


def line_and_twisted_cubic(char: int = DEFAULT_CHAR) -> Ideal:
    S = _S(char)
    T = Ideal(S, ["x*w - z^2", "x*y - z*w", "y*z - w^2"])
    return minimal_generators(intersect(T, Ideal(S, ["x", "y"])))


def double_line_tangent_line_plus_line(g: int, char: int = DEFAULT_CHAR) -> Ideal:
    """Z ∪_{2P} L1 disjoint from L2, g(Z) = g."""
    Z = double_line(-1 - g, char=char)
    S = Z.ring
    L1 = Ideal(S, ["y", "w"])
    L2 = Ideal(S, ["x - w", "y - z"])
    return minimal_generators(intersect(intersect(Z, L1), L2))


def triple_line_disjoint_line(a: int, g: int, char: int = DEFAULT_CHAR) -> Ideal:
    """W ⊔ L with W of type (a, -3-3a-g)."""
    b = -3 - 3 * a - g
    if a < 0 or b < 0:
        raise ConstructionError("need a >= 0 and b = -3-3a-g >= 0")
    S = _S(char)
    Z, q = _wl_Z(a, char)
    W = phi_triple(Z, S(f"z^{b}") * q - S(f"x^2*w^{a + b}"))
    return minimal_generators(intersect(W, Ideal(S, ["z", "w"])))


def disjoint_double_lines(g1: int, g2: int, char: int = DEFAULT_CHAR) -> Ideal:
    """Double line of genus g1 on x = y = 0 and of genus g2 on z = w = 0."""
    D1 = double_line(-1 - g1, char=char)
    S = D1.ring
    a2 = -1 - g2
    D2 = Ideal(S, ["z^2", "z*w", "w^2", f"z*y^{a2 + 1} - w*x^{a2 + 1}"])
    return minimal_generators(intersect(D1, D2))


# -- corpus ------------------------------------------------------------------------

CORPUS = [
    ("line", {}),
    ("double_line", {"a": 0}),
    ("double_line", {"a": 1}),
    ("line_and_twisted_cubic", {}),
    ("extremal_quartic", {"g": 0}),
    ("extremal_quartic", {"g": -3}),
    ("extremal_quartic", {"g": -5}),
    ("thick_witness", {"g": -3, "j": 2}),
    ("thick_witness", {"g": -3, "j": 3}),
    ("thick_4line", {"g": -3, "forms": ["z^4", "w^4", "z^2*w^2"]}),
    ("quasiprimitive_4line", {"a": 0, "b": 0, "c": 0}),
    ("quasiprimitive_4line", {"a": 1, "b": 0, "c": 1}),
    ("double_conic", {"g": -2}),
    ("double_line_conic", {"g": -2}),
    ("double_line_two_lines", {"g": -2}),
    ("wl_family_member", {"kind": "F1", "a": 1, "g": -6}),
    ("wl_family_member", {"kind": "F3", "a": 1, "g": -7}),
]


def build(name: str, params: dict, char: int = DEFAULT_CHAR) -> Ideal:
    """Dispatch a constructor by name (used by the corpus and the command line)."""
    p = dict(params)
    if name == "line":
        return support_line(char)
    if name == "thick_4line":
        return thick_4line(p["g"], *p["forms"], char=char)
    fn = CONSTRUCTORS.get(name)
    if fn is None:
        raise ConstructionError(f"unknown constructor {name}")
    return fn(**p, char=char)


CONSTRUCTORS = {
    "double_line": double_line,
    "double_conic": double_conic,
    "thick_witness": thick_witness,
    "general_thick_4line": general_thick_4line,
    "quasiprimitive_4line": quasiprimitive_4line,
    "extremal_quartic": extremal_quartic,
    "extremal_triple_line": extremal_triple_line,
    "extend_limit": extend_limit,
    "wl_family_member": wl_family_member,
    "double_line_two_lines": double_line_two_lines,
    "double_line_conic": double_line_conic,
    "line_and_twisted_cubic": line_and_twisted_cubic,
    "double_line_tangent_line_plus_line": double_line_tangent_line_plus_line,
    "triple_line_disjoint_line": triple_line_disjoint_line,
    "disjoint_double_lines": disjoint_double_lines,
}


def _slug(name: str, params: dict) -> str:
    parts = [name] + [f"{k}{v}" for k, v in sorted(params.items()) if not isinstance(v, list)]
    return "_".join(str(s).replace("-", "m") for s in parts)


def write_corpus(directory, char: int = DEFAULT_CHAR, entries=CORPUS) -> list[dict]:
    """Write every corpus ideal to ``directory`` with a JSON manifest."""
    from pathlib import Path

    from .cohomology import projection, spectrum_class

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    manifest = []
    for name, params in entries:
        I = build(name, params, char)
        path = out / f"{_slug(name, params)}.ideal"
        write_ideal(I, path)
        d, g = degree_genus(I)
        P = projection(I)
        manifest.append({"constructor": name, "parameters": params, "ideal_file": path.name,
                         "expected": {"degree": d, "genus": g},
                         "spectrum": sorted(P.spectrum),
                         "spectrum_class": spectrum_class(P.spectrum, g)})
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest
