"""Ideals with cached Groebner bases, the ideal text format, and ideal operations."""

from __future__ import annotations

import hashlib
from typing import Iterable, Sequence

from .graded import graded_slice_dim
from .groebner import GroebnerBasis, groebner_basis
from .ring import DEFAULT_CHAR, ParseError, Poly, Ring, RingError, is_prime, parse_poly

IRRELEVANT = ("x", "y", "z", "w")


class Ideal:
    """An ideal given by generators; the reduced Groebner basis is computed lazily."""

    def __init__(self, ring: Ring, gens: Iterable[Poly | str | int] = ()):
        self.ring = ring
        out = []
        for g in gens:
            g = ring(g) if not isinstance(g, Poly) or g.ring != ring else g
            if g:
                out.append(g)
        self.gens = tuple(out)
        self._gb: GroebnerBasis | None = None

    @classmethod
    def of(cls, ring: Ring, *gens) -> "Ideal":
        return cls(ring, gens)

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner_basis(self.gens, self.ring)
        return self._gb

    def reduced(self) -> "Ideal":
        """The same ideal generated by its reduced Groebner basis."""
        J = Ideal(self.ring, self.gb().polys)
        J._gb = self._gb
        return J

    def contains(self, f) -> bool:
        if not isinstance(f, Poly):
            f = self.ring(f)
        return self.gb().contains(f)

    __contains__ = contains

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb() == other.gb()

    def __hash__(self):
        return hash(self.gb())

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + tuple(self.ring.convert(g) for g in other.gens))

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * self.ring.convert(g) for f in self.gens for g in other.gens])

    def __pow__(self, k: int) -> "Ideal":
        J = Ideal(self.ring, [self.ring.one()])
        for _ in range(k):
            J = J * self
            J = J.minimal_gens_if_homogeneous()
        return J

    def minimal_gens_if_homogeneous(self) -> "Ideal":
        return minimal_generators(self) if self.homogeneous and self.gens else self

    def dim_part(self, n: int) -> int:
        return graded_slice_dim(self.gens, n)

    def digest(self) -> str:
        """Content hash of the reduced Groebner basis (order-independent identifier)."""
        text = "\n".join(sorted(str(g) for g in self.gb().polys))
        head = f"{','.join(self.ring.variables)}|{self.ring.char}|{self.ring.order}\n"
        return hashlib.sha256((head + text).encode()).hexdigest()[:16]

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"Ideal{self}"

    def to_text(self) -> str:
        return format_ideal(self)


def minimal_generators(I: Ideal) -> Ideal:
    """A minimal homogeneous generating set, chosen degree by degree."""
    import numpy as np

    from .graded import coeff_vector, degree_part_matrix
    from .linalg import complement_rows

    gens = sorted(I.gens, key=lambda g: (g.degree(), -g.lm))
    R = I.ring
    chosen: list[Poly] = []
    for d in sorted({g.degree() for g in gens}):
        cand = [g for g in gens if g.degree() == d]
        span = degree_part_matrix(chosen, d) if chosen else np.zeros((0, len(R.monomials(d))), dtype=np.int64)
        vecs = np.array([coeff_vector(g, d) for g in cand], dtype=np.int64)
        for i in complement_rows(span, vecs, R.char):
            chosen.append(cand[i])
    return Ideal(R, chosen)


# -- text format ------------------------------------------------------------

def parse_ideal_text(text: str) -> Ideal:
    """Parse the ``ring:`` / ``char:`` / ``ideal:`` block format."""
    variables = None
    char = DEFAULT_CHAR
    order = None
    gens_lines: list[tuple[int, str]] = []
    in_ideal = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head, sep, rest = line.partition(":")
        key = head.strip().lower()
        if sep and key in ("ring", "char", "order", "ideal"):
            if key == "ring":
                variables = tuple(rest.split())
                if not variables:
                    raise ParseError("empty variable list", lineno, len(raw) + 1)
            elif key == "char":
                try:
                    char = int(rest.strip())
                except ValueError:
                    raise ParseError("characteristic must be an integer", lineno, raw.index(":") + 2) from None
                if not is_prime(char) or char >= 2**31:
                    raise ParseError(f"characteristic {char} is not a prime below 2^31", lineno, raw.index(":") + 2)
            elif key == "order":
                order = rest.strip() or None
            else:
                in_ideal = True
                if rest.strip():
                    gens_lines.append((lineno, rest))
            continue
        if not in_ideal:
            raise ParseError("expected 'ring:', 'char:' or 'ideal:' header", lineno, 1)
        gens_lines.append((lineno, raw))
    if variables is None:
        raise ParseError("missing 'ring:' line", 1, 1)
    params = tuple(v for v in variables if v not in IRRELEVANT) if set(IRRELEVANT) <= set(variables) else ()
    ring = Ring(variables, char, order, params)
    gens = []
    for lineno, line in gens_lines:
        for piece in _split_commas(line):
            if piece[1].strip():
                gens.append(parse_poly_at(ring, piece[1], lineno, piece[0]))
    return Ideal(ring, gens)


def _split_commas(line: str):
    out, start, depth = [], 0, 0
    for i, ch in enumerate(line):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append((start, line[start:i]))
            start = i + 1
    out.append((start, line[start:]))
    return out


def parse_poly_at(ring: Ring, text: str, line: int, offset: int) -> Poly:
    try:
        return parse_poly(ring, text, line)
    except ParseError as e:
        raise ParseError(str(e).split(": ", 1)[1], e.line, e.column + offset) from None


def format_ideal(I: Ideal) -> str:
    lines = [f"ring: {' '.join(I.ring.variables)}", f"char: {I.ring.char}"]
    if I.ring.order not in ("grevlex",) and not I.ring.params:
        if isinstance(I.ring.order, str):
            lines.append(f"order: {I.ring.order}")
    lines.append("ideal:")
    lines += [str(g) for g in I.gens]
    return "\n".join(lines) + "\n"


def read_ideal(path) -> Ideal:
    with open(path) as fh:
        return parse_ideal_text(fh.read())


def write_ideal(I: Ideal, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_ideal(I))


# -- rings used throughout --------------------------------------------------

def standard_ring(char: int = DEFAULT_CHAR, order="grevlex") -> Ring:
    return Ring(("x", "y", "z", "w"), char, order)


def family_ring(char: int = DEFAULT_CHAR) -> Ring:
    return Ring(("x", "y", "z", "w", "t"), char, None, ("t",))


def line_ring(char: int = DEFAULT_CHAR) -> Ring:
    return Ring(("z", "w"), char)


def ideal(ring: Ring, *gens) -> Ideal:
    return Ideal(ring, gens)


# -- elimination, intersection, colon, saturation ---------------------------

def eliminate(I: Ideal, variables: Sequence[str]) -> Ideal:
    """Generators of I intersected with the subring on the remaining variables."""
    R = I.ring
    variables = [v for v in R.variables if v in set(variables)]
    if not variables:
        return I
    rest = tuple(v for v in R.variables if v not in variables)
    E = Ring(R.variables, R.char, (tuple(variables), rest), R.params)
    G = groebner_basis([E.convert(g) for g in I.gens], E)
    target = R
    for v in variables:
        target = target.drop(v)
    keep = [g for g in G.polys if not (g.variables_used() & set(variables))]
    return Ideal(target, [target.convert(g) for g in keep])


def _aux_name(R: Ring, base: str = "u") -> str:
    name = base
    k = 0
    while name in R.variables:
        k += 1
        name = f"{base}{k}"
    return name


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating u from u·I + (1−u)·J."""
    R = I.ring
    if J.ring != R:
        raise RingError("intersect: ring mismatch")
    if I.is_zero() or J.is_zero():
        return Ideal(R, [])
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    u = _aux_name(R)
    E = Ring((u,) + R.variables, R.char, ((u,), R.variables), (u,) + R.params)
    U = E.var(u)
    gens = [U * E.convert(f) for f in I.gens] + [(E.one() - U) * E.convert(g) for g in J.gens]
    G = groebner_basis(gens, E)
    keep = [R.convert(g) for g in G.polys if u not in g.variables_used()]
    return Ideal(R, keep)


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    ideals = list(ideals)
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def exact_divide(f: Poly, g: Poly) -> Poly:
    """f / g, raising if g does not divide f."""
    R = f.ring
    G = GroebnerBasis(R, [g.monic()])
    q = R.zero()
    r = f
    inv = pow(g.lc, R.char - 2, R.char)
    lg = g.lm
    while r:
        lm = r.lm
        if not R.divides(lg, lm):
            raise ArithmeticError(f"{g} does not divide {f}")
        c = r.lc * inv % R.char
        term = Poly._raw(R, {lm - lg: c})
        q = q + term
        r = r - g.shift(lm - lg, c)
    del G
    return q


def quotient_by_poly(I: Ideal, f: Poly) -> Ideal:
    """(I : f) = (I ∩ (f)) / f."""
    R = I.ring
    if not f:
        return Ideal(R, [R.one()])
    K = intersect(I, Ideal(R, [f]))
    return Ideal(R, [exact_divide(g, f) for g in K.gens])


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {h : hJ ⊆ I}."""
    R = I.ring
    gens = [g for g in J.gens if not I.contains(g)]
    if not gens:
        return Ideal(R, [R.one()])
    parts = [quotient_by_poly(I, g) for g in gens]
    return intersect_all(parts).reduced()


def saturate(I: Ideal, J: Ideal, max_iter: int = 64) -> Ideal:
    """(I : J^∞) by iterated colon until the reduced bases stabilize."""
    cur = I.reduced()
    for _ in range(max_iter):
        nxt = quotient(cur, J)
        if nxt == cur:
            return cur
        cur = nxt
    raise RuntimeError("saturation did not stabilize")


def saturate_by_var(I: Ideal, var: str) -> Ideal:
    """(I : var^∞) for homogeneous I: grevlex with var last, then strip var powers."""
    R = I.ring
    if not I.homogeneous or R.params:
        return saturate(I, Ideal(R, [R.var(var)]))
    Rv = Ring(R.variables, R.char, _single_block(R.variables, var))
    G = groebner_basis([Rv.convert(g) for g in I.gens], Rv)
    i = Rv.index(var)
    out = []
    for g in G.polys:
        k = min(Rv.unpack(m)[i] for m in g._t)
        e = [0] * Rv.nvars
        e[i] = k
        out.append(R.convert(Poly._raw(Rv, {m - Rv.pack(e): c for m, c in g._t.items()})))
    return Ideal(R, out)


def _single_block(variables, last):
    seq = tuple(v for v in variables if v != last) + (last,)
    return (seq,)


def saturate_irrelevant(I: Ideal, variables: Sequence[str] = IRRELEVANT) -> Ideal:
    """(I : m^∞) for the irrelevant ideal m, as the intersection of the (I : v^∞).

    Since every prime other than m misses some coordinate, the intersection
    over the coordinates is exact; containments are checked first so that
    usually no intersection needs to be computed.
    """
    R = I.ring
    variables = [v for v in variables if v in R.variables]
    if I.is_zero():
        return I
    if not I.homogeneous or R.params:
        return saturate(I, Ideal(R, [R.var(v) for v in variables]))
    parts = [saturate_by_var(I, v).reduced() for v in variables]
    minimal: list[Ideal] = []
    for P in parts:
        if any(P.contains_ideal(Q) for Q in minimal):
            continue
        minimal = [Q for Q in minimal if not Q.contains_ideal(P)]
        minimal.append(P)
    return intersect_all(minimal).reduced()


def saturate_param(I: Ideal, t: str = "t") -> Ideal:
    """(I : t^∞) by eliminating u from I + (u·t − 1)."""
    R = I.ring
    u = _aux_name(R)
    E = Ring((u,) + R.variables, R.char, ((u,), R.variables), (u,) + R.params)
    gens = [E.convert(g) for g in I.gens] + [E.var(u) * E.var(t) - E.one()]
    G = groebner_basis(gens, E)
    return Ideal(R, [R.convert(g) for g in G.polys if u not in g.variables_used()])
